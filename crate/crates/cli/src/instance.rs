//! Instance files: JSON with signed-integer element coding (`i` for i,
//! `-i` for i*, 1-indexed) and four kinds of payload.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use smk_core::corpus::full_axiom_battery;
use smk_core::ground::{ESet, GroundSet};
use smk_core::matroid::{Matroid, MatroidError};
use smk_core::symp::{minimal_enveloping, EnvelopeError, SympMatroid};

/// How a command run went wrong: bad input exits 2, a falsified property
/// exits 1 with the offending instance echoed.
pub enum CliError {
    Invalid(String),
    Falsified { message: String, instance: Option<Value>, detail: Option<Value> },
}

impl CliError {
    pub fn falsified(message: impl Into<String>, instance: Option<Value>) -> CliError {
        CliError::Falsified { message: message.into(), instance, detail: None }
    }
}

#[derive(Serialize, Deserialize, Clone, Copy, PartialEq, Eq, Debug)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    EnvelopingBases,
    SymplecticBases,
    Uniform,
    Orthogonal,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct Instance {
    pub n: usize,
    pub kind: Kind,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub bases: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
}

/// Pair-count guard, overridable through SMK_MAX_GROUND.
pub fn max_ground() -> usize {
    std::env::var("SMK_MAX_GROUND").ok().and_then(|v| v.parse().ok()).unwrap_or(5)
}

pub fn signed_sets(g: GroundSet, sets: &[ESet]) -> Vec<Vec<i64>> {
    sets.iter().map(|&s| g.set_to_signed(s)).collect()
}

impl Instance {
    pub fn load(path: &std::path::Path) -> Result<Instance, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Invalid(format!("cannot read {}: {e}", path.display())))?;
        let inst: Instance = serde_json::from_str(&text)
            .map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
        inst.validate()?;
        Ok(inst)
    }

    pub fn save(&self, path: &std::path::Path) -> Result<(), CliError> {
        let text = to_sorted_pretty(&serde_json::to_value(self).unwrap());
        std::fs::write(path, text + "\n")
            .map_err(|e| CliError::Invalid(format!("cannot write {}: {e}", path.display())))
    }

    pub fn echo(&self) -> Value {
        serde_json::to_value(self).unwrap()
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.n == 0 {
            return Err(CliError::Invalid("n must be at least 1".into()));
        }
        if self.n > max_ground() {
            return Err(CliError::Invalid(format!(
                "n = {} exceeds the guard of {} pairs (set SMK_MAX_GROUND to raise it)",
                self.n,
                max_ground()
            )));
        }
        match self.kind {
            Kind::Uniform => {
                let k = self
                    .k
                    .ok_or_else(|| CliError::Invalid("uniform instances need a field k".into()))?;
                if k == 0 || k > self.n {
                    return Err(CliError::Invalid(format!(
                        "uniform rank k = {k} is outside 1..={}",
                        self.n
                    )));
                }
                if !self.bases.is_empty() {
                    return Err(CliError::Invalid("uniform instances take no bases".into()));
                }
            }
            _ => {
                if self.bases.is_empty() {
                    return Err(CliError::Invalid("bases must be a nonempty list".into()));
                }
                let g = GroundSet::new(self.n);
                for (i, b) in self.bases.iter().enumerate() {
                    for (j, &v) in b.iter().enumerate() {
                        if g.from_signed(v).is_none() {
                            return Err(CliError::Invalid(format!(
                                "bases[{i}][{j}] = {v} is not a signed element of 1..={}",
                                self.n
                            )));
                        }
                    }
                    if g.set_from_signed(b).is_none() {
                        return Err(CliError::Invalid(format!(
                            "bases[{i}] repeats an element"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn ground(&self) -> GroundSet {
        GroundSet::new(self.n)
    }

    /// The decoded basis family; empty for uniform instances.
    pub fn family(&self) -> Vec<ESet> {
        let g = self.ground();
        self.bases.iter().map(|b| g.set_from_signed(b).unwrap()).collect()
    }

    /// Builds the envelope per kind, then runs the whole axiom battery, so
    /// every successfully loaded matroid is a genuine ranked symplectic
    /// matroid.  Axiom failures count as falsified properties, not as bad
    /// input.
    pub fn to_symp(&self) -> Result<SympMatroid, CliError> {
        let g = self.ground();
        let echo = Some(self.echo());
        let env = match self.kind {
            Kind::Uniform => {
                let k = self.k.unwrap();
                Matroid::from_bases(g.size(), &g.full().subsets_of_size(k)).unwrap()
            }
            Kind::EnvelopingBases => {
                Matroid::from_bases(g.size(), &self.family()).map_err(|e| self.matroid_err(e))?
            }
            Kind::SymplecticBases | Kind::Orthogonal => {
                match minimal_enveloping(g, &self.family()) {
                    Ok(m) => m,
                    Err(e @ EnvelopeError::BadInput(_)) => {
                        return Err(CliError::Invalid(e.to_string()))
                    }
                    Err(e @ EnvelopeError::TooLarge(_)) => {
                        return Err(CliError::Invalid(e.to_string()))
                    }
                    Err(e) => return Err(CliError::falsified(e.to_string(), echo)),
                }
            }
        };
        let s = full_axiom_battery(g, env).map_err(|m| CliError::falsified(m, echo.clone()))?;
        if matches!(self.kind, Kind::SymplecticBases | Kind::Orthogonal) {
            let mut fam = self.family();
            fam.sort();
            fam.dedup();
            if s.bases != fam {
                return Err(CliError::falsified(
                    "envelope admits admissible bases outside the given family",
                    echo,
                ));
            }
        }
        Ok(s)
    }

    fn matroid_err(&self, e: MatroidError) -> CliError {
        let g = self.ground();
        match e {
            MatroidError::ExchangeViolation { b1, b2, a } => CliError::Falsified {
                message: "basis exchange fails".into(),
                instance: Some(self.echo()),
                detail: Some(json!({
                    "certificate": {
                        "basis": g.set_to_signed(b1),
                        "against": g.set_to_signed(b2),
                        "element": g.signed(a),
                    }
                })),
            },
            MatroidError::UnequalCardinality(a, b) => CliError::Falsified {
                message: format!(
                    "bases {} and {} have different sizes",
                    g.set_name(a),
                    g.set_name(b)
                ),
                instance: Some(self.echo()),
                detail: None,
            },
            other => CliError::Invalid(other.to_string()),
        }
    }
}

/// Instance wrapping an explicit envelope basis list.
pub fn instance_from_env(g: GroundSet, env: &Matroid) -> Instance {
    Instance {
        n: g.n,
        kind: Kind::EnvelopingBases,
        bases: signed_sets(g, &env.bases),
        k: None,
    }
}

/// Pretty JSON with keys in sorted order at every level.
pub fn to_sorted_pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).unwrap()
}

pub fn to_compact(v: &Value) -> String {
    serde_json::to_string(v).unwrap()
}
