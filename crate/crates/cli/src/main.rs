//! smk: construct, verify, and analyze ranked symplectic matroids from the
//! command line.  All reports are JSON with sorted keys; exit 0 means every
//! checked property held, exit 1 means a property was falsified (the
//! offending instance is echoed), exit 2 means the input was invalid.

mod instance;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use smk_core::corpus::{e2_env, exc_env, generate_corpus, s1_env, CorpusEntry};
use smk_core::fan::{
    balancing_check, bergman_fan_ordinary, bergman_fan_symp, env_fan_check, fan_unimodular,
    full_support_flat_rank_check, mw_group, refinement_check, type_classes, type_pair_constancy,
};
use smk_core::geometry::{
    dim_check_symp, env_membership_check, gelfand_serganova_check, h_eq_v_check,
    h_representation, polytope_symp, HeqV,
};
use smk_core::ground::GroundSet;
use smk_core::mason::{class_size_check, count_report, counting_identity_check, rank3_check};
use smk_core::moebius::{
    deletion_contraction_check, flat_sum_identity, mobius_identity_check, sign_alternation_check,
};
use smk_core::ortho::{
    enumerate_lagrangian, envelope_theorem_check, is_lagrangian, is_orthogonal, parity_check,
    symplectic_inclusion_check, EnvVerdict,
};
use smk_core::symp::{
    check_cn_lattice, connectivity_check, covered_flats_check, flat_dichotomy_check,
    flats_lattice, inadmissible_flat_check, inadmissible_flat_deletion_check,
    is_admissible_matroid, is_symplectic, maximal_basis_admissible_check, psi_bijection,
    ranked_symp,
};
use std::io::Write;
use std::path::PathBuf;
use std::process::exit;

use instance::{
    instance_from_env, max_ground, signed_sets, to_compact, to_sorted_pretty, CliError, Instance,
    Kind,
};

#[derive(Parser)]
#[command(name = "smk", version, about = "Ranked symplectic matroid toolkit")]
struct Cli {
    /// Emit compact single-line JSON instead of pretty-printed
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write an instance file (a uniform family or a named example)
    Gen {
        /// Instance kind to generate (only "uniform" takes --n/--k)
        #[arg(long, conflicts_with = "example")]
        kind: Option<String>,
        /// Named example: s1, exc, or e2
        #[arg(long)]
        example: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Run the axiom battery and the structure checks on one instance
    Verify { file: PathBuf },
    /// Lattice of admissible flats with covers and top Mobius value
    Flats { file: PathBuf },
    /// Mobius value plus recursion, alternation, and level-sum checks
    Moebius {
        file: PathBuf,
        /// Run the deletion-contraction recursion at every pair
        #[arg(long)]
        all_pairs: bool,
    },
    /// Basis polytope: dimension, vertices, halfspaces, edge criterion
    Polytope { file: PathBuf },
    /// Flat fan: rays, cones, unimodularity, weight-group rank
    Fan {
        file: PathBuf,
        /// Weight-group degree (default: top dimension)
        #[arg(long)]
        mw: Option<usize>,
        #[arg(long, default_value_t = 10)]
        samples: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// Independent-set counting report
    Mason { file: PathBuf },
    /// Orthogonal-family checks on a file, or enumerate all Lagrangian
    /// families at a given pair count
    Ortho {
        file: Option<PathBuf>,
        #[arg(long, conflicts_with = "file")]
        enumerate: Option<usize>,
    },
    /// Generate the instance catalog and run the whole check suite on it
    Corpus {
        #[arg(long, default_value_t = 3)]
        max_n: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        samples: usize,
        /// Keep only entries whose label contains this substring
        #[arg(long)]
        filter: Option<String>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

/// Print and exit, shrugging off a reader that hung up early: the checks
/// already ran, so a broken pipe must not turn their exit code into a panic.
fn emit(text: &str, code: i32) -> ! {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|()| out.write_all(b"\n"));
    let _ = out.flush();
    exit(code);
}

fn main() {
    let cli = Cli::parse();
    match run(&cli.cmd) {
        Ok((report, pass)) => {
            let text = if cli.json { to_compact(&report) } else { to_sorted_pretty(&report) };
            emit(&text, if pass { 0 } else { 1 });
        }
        Err(CliError::Invalid(msg)) => {
            let _ = writeln!(std::io::stderr(), "error: {msg}");
            exit(2);
        }
        Err(CliError::Falsified { message, instance, detail }) => {
            let mut obj = json!({ "falsified": message });
            if let Some(i) = instance {
                obj["instance"] = i;
            }
            if let Some(Value::Object(extra)) = detail {
                for (k, v) in extra {
                    obj[k] = v;
                }
            }
            let text = if cli.json { to_compact(&obj) } else { to_sorted_pretty(&obj) };
            emit(&text, 1);
        }
    }
}

fn run(cmd: &Cmd) -> Result<(Value, bool), CliError> {
    match cmd {
        Cmd::Gen { kind, example, n, k, out } => gen(kind, example, *n, *k, out),
        Cmd::Verify { file } => verify(file),
        Cmd::Flats { file } => flats(file),
        Cmd::Moebius { file, all_pairs } => moebius(file, *all_pairs),
        Cmd::Polytope { file } => polytope(file),
        Cmd::Fan { file, mw, samples, seed } => fan(file, *mw, *samples, *seed),
        Cmd::Mason { file } => mason(file),
        Cmd::Ortho { file, enumerate } => ortho(file, *enumerate),
        Cmd::Corpus { max_n, seed, samples, filter, out } => {
            corpus(*max_n, *seed, *samples, filter, out)
        }
    }
}

fn gen(
    kind: &Option<String>,
    example: &Option<String>,
    n: Option<usize>,
    k: Option<usize>,
    out: &Option<PathBuf>,
) -> Result<(Value, bool), CliError> {
    let inst = match (kind.as_deref(), example.as_deref()) {
        (Some("uniform"), None) => {
            let n = n.ok_or_else(|| CliError::Invalid("uniform needs --n".into()))?;
            let k = k.ok_or_else(|| CliError::Invalid("uniform needs --k".into()))?;
            Instance { n, kind: Kind::Uniform, bases: Vec::new(), k: Some(k) }
        }
        (Some(other), None) => {
            return Err(CliError::Invalid(format!(
                "cannot generate kind {other}; write the bases by hand"
            )))
        }
        (None, Some(name)) => {
            let (g, env) = match name {
                "s1" => s1_env(),
                "exc" => exc_env(),
                "e2" => e2_env(),
                _ => {
                    return Err(CliError::Invalid(format!(
                        "unknown example {name}; pick s1, exc, or e2"
                    )))
                }
            };
            instance_from_env(g, &env)
        }
        _ => return Err(CliError::Invalid("pass exactly one of --kind or --example".into())),
    };
    inst.validate()?;
    if let Some(path) = out {
        inst.save(path)?;
    }
    Ok((inst.echo(), true))
}

fn verify(file: &PathBuf) -> Result<(Value, bool), CliError> {
    let inst = Instance::load(file)?;
    let g = inst.ground();
    let echo = inst.echo();
    let fail = |check: &str, msg: String| CliError::Falsified {
        message: msg,
        instance: Some(echo.clone()),
        detail: Some(json!({ "check": check })),
    };
    // rebuild stepwise so the report can name the failing check
    let env = match inst.kind {
        Kind::Uniform => {
            smk_core::matroid::Matroid::from_bases(
                g.size(),
                &g.full().subsets_of_size(inst.k.unwrap()),
            )
            .unwrap()
        }
        _ => match inst.to_symp() {
            Ok(s) => s.env,
            Err(e) => return Err(e),
        },
    };
    is_admissible_matroid(g, &env).map_err(|e| fail("admissible_matroid", e.to_string()))?;
    let lat = flats_lattice(g, &env);
    check_cn_lattice(g, &lat).map_err(|e| fail("cn_lattice", e))?;
    let s = ranked_symp(g, env).map_err(|e| fail("ranked_bases", e.to_string()))?;
    is_symplectic(g, &s.bases).map_err(|ord| {
        let names: Vec<String> = ord.descending().iter().map(|&e| g.elem_name(e)).collect();
        fail("symplectic", format!("no Gale-greatest basis under {}", names.join(" > ")))
    })?;
    maximal_basis_admissible_check(&s).map_err(|e| fail("maximal_basis_admissible", e))?;
    flat_dichotomy_check(g, &s.env).map_err(|e| fail("flat_dichotomy", e))?;
    inadmissible_flat_deletion_check(g, &s.env)
        .map_err(|e| fail("inadmissible_flat_deletion", e))?;
    inadmissible_flat_check(g, &s.env).map_err(|e| fail("inadmissible_flat_rank", e))?;
    covered_flats_check(g, &s.env).map_err(|e| fail("covered_flats", e))?;
    connectivity_check(&s).map_err(|e| fail("connectivity", e))?;
    for a in 0..g.size() {
        psi_bijection(&s, a)
            .map_err(|e| fail("psi_bijection", format!("at {}: {e}", g.elem_name(a))))?;
    }
    let report = json!({
        "admissible_bases": s.bases.len(),
        "checks": {
            "admissible_matroid": true,
            "cn_lattice": true,
            "connectivity": true,
            "covered_flats": true,
            "flat_dichotomy": true,
            "inadmissible_flat_deletion": true,
            "inadmissible_flat_rank": true,
            "maximal_basis_admissible": true,
            "psi_bijection": true,
            "symplectic": true,
        },
        "env_bases": s.env.bases.len(),
        "n": g.n,
        "rank": s.rank(),
    });
    Ok((report, true))
}

fn flats(file: &PathBuf) -> Result<(Value, bool), CliError> {
    let inst = Instance::load(file)?;
    let s = inst.to_symp()?;
    let lat = flats_lattice(s.g, &s.env);
    let flats: Vec<Vec<i64>> = lat.sets.iter().map(|&f| s.g.set_to_signed(f)).collect();
    let mut covers: Vec<(usize, usize)> = Vec::new();
    for i in 0..lat.len() {
        for j in lat.covers_of(i) {
            covers.push((i, j));
        }
    }
    covers.sort_unstable();
    let report = json!({
        "covers": covers.iter().map(|&(i, j)| json!([i, j])).collect::<Vec<_>>(),
        "flats": flats,
        "mobius_top": lat.mobius_top(),
    });
    Ok((report, true))
}

fn moebius(file: &PathBuf, all_pairs: bool) -> Result<(Value, bool), CliError> {
    let inst = Instance::load(file)?;
    let s = inst.to_symp()?;
    let lat = flats_lattice(s.g, &s.env);
    let sign_ok = sign_alternation_check(s.g, &s.env).is_ok();
    let lemma35_ok = flat_sum_identity(s.g, &s.env).is_ok();
    let pairs: Vec<usize> = if all_pairs { (0..s.g.n).collect() } else { vec![0] };
    let del_contr_ok: Vec<bool> =
        pairs.iter().map(|&p| deletion_contraction_check(&s, p).is_ok()).collect();
    let pass = sign_ok && lemma35_ok && del_contr_ok.iter().all(|&b| b);
    let report = json!({
        "del_contr_ok": del_contr_ok,
        "lemma35_ok": lemma35_ok,
        "mobius": lat.mobius_top(),
        "sign_ok": sign_ok,
    });
    Ok((report, pass))
}

fn polytope(file: &PathBuf) -> Result<(Value, bool), CliError> {
    let inst = Instance::load(file)?;
    let s = inst.to_symp()?;
    let p = polytope_symp(&s);
    let vertices: Vec<Vec<String>> = p
        .vertices
        .iter()
        .map(|v| v.iter().map(smk_core::exact::rat_to_string).collect())
        .collect();
    let h_rep: Vec<Value> = h_representation(&s)
        .iter()
        .map(|r| json!({ "bound": r.bound, "from": r.from, "normal": r.normal }))
        .collect();
    let verdict = match h_eq_v_check(&s) {
        HeqV::Equal => "equal",
        HeqV::VSubsetH(_) => "V_subset_H",
        HeqV::Inconsistent(_) => "inconsistent",
    };
    let gs = gelfand_serganova_check(s.g, &s.bases);
    // the halfspace description is only claimed to be exact from rank 3 up
    let h_ok = verdict == "equal" || (verdict == "V_subset_H" && s.rank() < 3);
    let pass = gs && h_ok && dim_check_symp(&s).is_ok();
    let report = json!({
        "dim": p.dim(),
        "gs_check": gs,
        "h_eq_v": verdict,
        "h_rep": h_rep,
        "vertices": vertices,
    });
    Ok((report, pass))
}

fn fan(
    file: &PathBuf,
    mw: Option<usize>,
    samples: usize,
    seed: u64,
) -> Result<(Value, bool), CliError> {
    let inst = Instance::load(file)?;
    let s = inst.to_symp()?;
    let f = bergman_fan_symp(&s);
    let unimodular = fan_unimodular(&f) && fan_unimodular(&bergman_fan_ordinary(&s.env));
    let refines = refinement_check(&s, samples, seed).is_ok();
    let degree = mw.unwrap_or(f.dim_max());
    if degree > f.dim_max() {
        return Err(CliError::Invalid(format!(
            "weight degree {degree} exceeds the fan dimension {}",
            f.dim_max()
        )));
    }
    let group = mw_group(&f, degree);
    let report = json!({
        "classes_d": type_classes(&s, &f, false),
        "classes_d1": type_classes(&s, &f, true),
        "max_cones": f.max_cones().len(),
        "mw_rank": group.rank,
        "rays": f.ray_count(),
        "refines_normal_fan": refines,
        "unimodular": unimodular,
    });
    Ok((report, unimodular && refines))
}

fn mason(file: &PathBuf) -> Result<(Value, bool), CliError> {
    let inst = Instance::load(file)?;
    let s = inst.to_symp()?;
    let r = count_report(&s);
    let pass = r.identity_ok && r.class_sizes_ok && r.rank3_ok != Some(false);
    let report = json!({
        "class_sizes_ok": r.class_sizes_ok,
        "i_counts": r.i_counts,
        "i_variant1": r.i_variant1,
        "i_variant2": r.i_variant2,
        "i_variant3": r.i_variant3,
        "identity_ok": r.identity_ok,
        "j_counts": r.j_counts,
        "rank3_ok": r.rank3_ok,
        "s_counts": r.s_counts,
        "s_variant1": r.s_variant1,
    });
    Ok((report, pass))
}

fn env_verdict_string(v: &EnvVerdict) -> String {
    match v {
        EnvVerdict::Envelope => "envelope".into(),
        EnvVerdict::Falsified(msg) => format!("falsified: {msg}"),
        EnvVerdict::Skipped(msg) => format!("skipped: {msg}"),
    }
}

fn ortho(file: &Option<PathBuf>, enumerate: Option<usize>) -> Result<(Value, bool), CliError> {
    if let Some(n) = enumerate {
        if n == 0 || n > 3 {
            return Err(CliError::Invalid(
                "enumeration is exhaustive and sized for 1 to 3 pairs".into(),
            ));
        }
        let g = GroundSet::new(n);
        let families = enumerate_lagrangian(n);
        let mut rows = Vec::new();
        let mut falsifications = Vec::new();
        for fam in &families {
            let parity = parity_check(g, fam);
            let verdict = envelope_theorem_check(g, fam);
            let names: Vec<String> = fam.iter().map(|&b| g.set_name(b)).collect();
            if !parity {
                falsifications.push(format!("{} fails the starred-parity rule", names.join(" ")));
            }
            if let EnvVerdict::Falsified(msg) = &verdict {
                falsifications.push(format!("{}: {msg}", names.join(" ")));
            }
            rows.push(json!({
                "envelope": env_verdict_string(&verdict),
                "parity_ok": parity,
                "sets": signed_sets(g, fam),
            }));
        }
        let pass = falsifications.is_empty();
        let report = json!({
            "count": families.len(),
            "falsifications": falsifications,
            "families": rows,
            "n": n,
        });
        return Ok((report, pass));
    }
    let Some(path) = file else {
        return Err(CliError::Invalid("pass an instance file or --enumerate N".into()));
    };
    let inst = Instance::load(path)?;
    if inst.kind != Kind::Orthogonal {
        return Err(CliError::Invalid("ortho expects an instance of kind orthogonal".into()));
    }
    let g = inst.ground();
    let fam = inst.family();
    let orthogonal = is_orthogonal(g, &fam);
    if !orthogonal {
        let report = json!({
            "lagrangian": false,
            "orthogonal": false,
        });
        return Ok((report, true));
    }
    let parity = parity_check(g, &fam);
    let inclusion = symplectic_inclusion_check(g, &fam);
    let verdict = envelope_theorem_check(g, &fam);
    let pass =
        parity && inclusion.is_ok() && !matches!(verdict, EnvVerdict::Falsified(_));
    let report = json!({
        "envelope": env_verdict_string(&verdict),
        "lagrangian": is_lagrangian(g, &fam),
        "orthogonal": true,
        "parity_ok": parity,
        "symplectic_inclusion_ok": inclusion.is_ok(),
    });
    Ok((report, pass))
}

fn check_into(failures: &mut Vec<String>, label: &str, name: &str, r: Result<(), String>) -> bool {
    match r {
        Ok(()) => true,
        Err(msg) => {
            failures.push(format!("{label}: {name}: {msg}"));
            false
        }
    }
}

/// Every module's checks on one catalog entry.  Returns the entry report,
/// hard failures, falsified claims, and recorded findings.  A falsified
/// claim is a theorem-shaped check that a battery-passing instance
/// violates; it fails the suite like a hard failure but is listed apart
/// so a counterexample is not mistaken for a broken computation.
fn suite_entry(
    entry: &CorpusEntry,
    samples: usize,
    seed: u64,
) -> (Value, Vec<String>, Vec<String>, Vec<String>) {
    let s = &entry.symp;
    let g = s.g;
    let mut failures: Vec<String> = Vec::new();
    let mut falsifications: Vec<String> = Vec::new();
    let mut findings: Vec<String> = Vec::new();
    macro_rules! check {
        ($name:expr, $r:expr) => {
            check_into(&mut failures, &entry.label, $name, $r)
        };
    }

    let axioms = check!(
        "axioms",
        smk_core::corpus::full_axiom_battery(g, s.env.clone()).map(|_| ())
    );
    let structure = json!({
        "connectivity": check!("connectivity", connectivity_check(s)),
        "covered_flats": check!("covered_flats", covered_flats_check(g, &s.env)),
        "flat_dichotomy": check!("flat_dichotomy", flat_dichotomy_check(g, &s.env)),
        "inadmissible_flat_deletion":
            check!("inadmissible_flat_deletion", inadmissible_flat_deletion_check(g, &s.env)),
        "inadmissible_flat_rank":
            check!("inadmissible_flat_rank", inadmissible_flat_check(g, &s.env)),
        "psi_bijection": (0..g.size()).fold(true, |ok, a| {
            let good = match psi_bijection(s, a) {
                Ok(_) => true,
                Err(msg) => {
                    if s.rank() >= 3 {
                        falsifications.push(format!("{}: contraction pairing: {msg}", entry.label));
                    } else {
                        findings.push(format!(
                            "{}: contraction pairing below rank 3: {msg}",
                            entry.label
                        ));
                    }
                    false
                }
            };
            good && ok
        }),
    });

    let lat = flats_lattice(g, &s.env);
    let boolean_match = lat.mobius_top() == lat.boolean_expansion();
    if !boolean_match {
        failures.push(format!("{}: mobius differs from the boolean expansion", entry.label));
    }
    let weisner = lat.weisner_check();
    if !weisner {
        failures.push(format!("{}: Weisner recursion fails at an atom", entry.label));
    }
    let moebius = json!({
        "boolean_expansion_match": boolean_match,
        "del_contr": (0..g.n).fold(true, |ok, p| {
            check!("del_contr", deletion_contraction_check(s, p)) && ok
        }),
        "identity": check!("mobius_identity", mobius_identity_check(g, &s.env)),
        "level_sums": check!("level_sums", flat_sum_identity(g, &s.env)),
        "sign": check!("sign_alternation", sign_alternation_check(g, &s.env)),
        "value": lat.mobius_top(),
        "weisner": weisner,
    });

    let gs = gelfand_serganova_check(g, &s.bases);
    if !gs {
        failures.push(format!("{}: edge criterion rejects the basis family", entry.label));
    }
    let h_verdict = if g.n <= 3 {
        match h_eq_v_check(s) {
            HeqV::Equal => "equal".to_string(),
            HeqV::VSubsetH(_) => {
                if s.rank() >= 3 {
                    falsifications.push(format!(
                        "{}: halfspace description has vertices outside the polytope",
                        entry.label
                    ));
                } else {
                    findings.push(format!(
                        "{}: rank-2 halfspace description is strictly larger than the polytope",
                        entry.label
                    ));
                }
                "V_subset_H".to_string()
            }
            HeqV::Inconsistent(_) => {
                failures.push(format!("{}: a vertex violates its own halfspaces", entry.label));
                "inconsistent".to_string()
            }
        }
    } else {
        "skipped".to_string()
    };
    let polytope = json!({
        "dim_ok": match dim_check_symp(s) {
            Ok(()) => true,
            Err(msg) => {
                falsifications.push(format!("{}: {msg}", entry.label));
                false
            }
        },
        "gs": gs,
        "h_eq_v": h_verdict,
        "membership": check!("membership", env_membership_check(s)),
    });

    let f = bergman_fan_symp(s);
    let fo = bergman_fan_ordinary(&s.env);
    let unimodular = fan_unimodular(&f) && fan_unimodular(&fo);
    if !unimodular {
        failures.push(format!("{}: a cone basis is not unimodular", entry.label));
    }
    let top = f.dim_max();
    let ones = vec![1i64; f.max_cones().len()];
    let group = mw_group(&f, top);
    let classes_d = type_classes(s, &f, false);
    let classes_d1 = type_classes(s, &f, true);
    let interp = if group.rank == classes_d1 {
        "dim_plus_one"
    } else if group.rank == classes_d {
        "dim"
    } else {
        failures.push(format!(
            "{}: weight rank {} matches neither class count ({} / {})",
            entry.label, group.rank, classes_d, classes_d1
        ));
        "none"
    };
    let fan = json!({
        "balanced": check!("balancing", balancing_check(&f, top, &ones)),
        "classes_d": classes_d,
        "classes_d1": classes_d1,
        "classes_interpretation": interp,
        "env_fan": check!("env_fan", env_fan_check(s)),
        "full_support": check!("full_support", full_support_flat_rank_check(s, &f)),
        "max_cones": f.max_cones().len(),
        "mw_rank": group.rank,
        "pair_constancy": check!("pair_constancy", type_pair_constancy(s, &f, &group)),
        "rays": f.ray_count(),
        "refines": check!("refinement", refinement_check(s, samples, seed)),
        "unimodular": unimodular,
    });

    let counting = json!({
        "class_sizes": check!("class_sizes", class_size_check(s).map_err(|e| e.to_string())),
        "identity":
            check!("counting_identity", counting_identity_check(s).map_err(|e| e.to_string())),
        "rank3": if s.rank() == 3 {
            Value::Bool(check!("rank3", rank3_check(s).map_err(|e| e.to_string())))
        } else {
            Value::Null
        },
    });

    let report = json!({
        "admissible_bases": s.bases.len(),
        "axioms": axioms,
        "counting": counting,
        "env_bases": s.env.bases.len(),
        "fan": fan,
        "label": entry.label,
        "moebius": moebius,
        "n": g.n,
        "polytope": polytope,
        "rank": s.rank(),
        "structure": structure,
    });
    (report, failures, falsifications, findings)
}

fn corpus(
    max_n: usize,
    seed: u64,
    samples: usize,
    filter: &Option<String>,
    out: &Option<PathBuf>,
) -> Result<(Value, bool), CliError> {
    if !(2..=4).contains(&max_n) {
        return Err(CliError::Invalid("--max-n must be between 2 and 4".into()));
    }
    if max_n > max_ground() {
        return Err(CliError::Invalid(format!(
            "--max-n {} exceeds the guard of {} pairs (set SMK_MAX_GROUND to raise it)",
            max_n,
            max_ground()
        )));
    }
    let entries: Vec<CorpusEntry> = generate_corpus(max_n, seed)
        .into_iter()
        .filter(|e| filter.as_deref().map_or(true, |f| e.label.contains(f)))
        .collect();
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    let mut falsified = Vec::new();
    let mut findings = Vec::new();
    for entry in &entries {
        let (row, mut fail, mut fals, mut found) = suite_entry(entry, samples, seed);
        rows.push(row);
        failures.append(&mut fail);
        falsified.append(&mut fals);
        findings.append(&mut found);
    }
    let first_bad = failures.first().or(falsified.first()).cloned();
    let mut report = json!({
        "all_pass": failures.is_empty() && falsified.is_empty(),
        "failures": failures,
        "falsifications": falsified,
        "findings": findings,
        "instances": entries.len(),
        "max_n": max_n,
        "report": rows,
        "seed": seed,
    });
    if entries.is_empty() {
        report["note"] = Value::String("0 instances".into());
    }
    if let Some(first) = first_bad {
        let label = first.split(':').next().unwrap();
        if let Some(entry) = entries.iter().find(|e| e.label == label) {
            report["failing_instance"] =
                instance_from_env(entry.symp.g, &entry.symp.env).echo();
        }
    }
    let pass = report["all_pass"].as_bool().unwrap();
    if let Some(path) = out {
        std::fs::write(path, to_sorted_pretty(&report) + "\n")
            .map_err(|e| CliError::Invalid(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok((report, pass))
}
