//! Exact rational linear algebra and a small exact-simplex LP kernel.
//! No floating point anywhere; every verdict is a certificate of an exact
//! arithmetic fact.

use num::rational::BigRational;
use num::traits::{One, Signed, Zero};
use num::BigInt;

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_frac(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

pub fn rat_to_string(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

fn to_rref(rows: &mut Vec<Vec<Rat>>) -> Vec<usize> {
    let nrows = rows.len();
    let ncols = if nrows == 0 { 0 } else { rows[0].len() };
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x = &*x / &inv;
        }
        for i in 0..nrows {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..ncols {
                    let sub = &f * &rows[r][j];
                    rows[i][j] = &rows[i][j] - sub;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    pivot_cols
}

pub fn rank_rat(rows: &[Vec<Rat>]) -> usize {
    let mut m = rows.to_vec();
    to_rref(&mut m).len()
}

pub fn rank_i64(rows: &[Vec<i64>]) -> usize {
    rank_rat(&rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect::<Vec<_>>())
}

/// Is `v` in the row span of `rows`?
pub fn in_span_i64(rows: &[Vec<i64>], v: &[i64]) -> bool {
    let base = rank_i64(rows);
    let mut ext = rows.to_vec();
    ext.push(v.to_vec());
    rank_i64(&ext) == base
}

/// Basis of the rational null space of `A x = 0` where rows of `a` are the
/// equations over `ncols` unknowns.
pub fn nullspace_rat(a: &[Vec<Rat>], ncols: usize) -> Vec<Vec<Rat>> {
    let mut m: Vec<Vec<Rat>> = a.to_vec();
    for row in &m {
        assert_eq!(row.len(), ncols);
    }
    let pivots = to_rref(&mut m);
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivot_set.contains(c)) {
        let mut v = vec![Rat::zero(); ncols];
        v[free] = Rat::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -m[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Clears denominators and common content, making an integer vector.
pub fn primitive_integer(v: &[Rat]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for x in v {
        lcm = num::integer::lcm(lcm, x.denom().clone());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = num::integer::gcd(g, x.abs());
    }
    if g.is_zero() || g.is_one() {
        ints
    } else {
        ints.into_iter().map(|x| x / &g).collect()
    }
}

/// Elementary divisors of an integer matrix (Smith normal form diagonal),
/// nonzero entries only.
pub fn snf_divisors(mat: &[Vec<i64>]) -> Vec<i64> {
    let mut m: Vec<Vec<i64>> = mat.to_vec();
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut out = Vec::new();
    let mut t = 0;
    loop {
        if t >= rows || t >= cols {
            break;
        }
        // find the nonzero entry of least magnitude in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if m[i][j] != 0
                    && best.map_or(true, |(bi, bj)| m[i][j].abs() < m[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        m.swap(t, bi);
        for row in m.iter_mut() {
            row.swap(t, bj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                let q = m[i][t].div_euclid(m[t][t]);
                if q != 0 {
                    for j in t..cols {
                        m[i][j] -= q * m[t][j];
                    }
                }
                if m[i][t] != 0 {
                    m.swap(t, i);
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let q = m[t][j].div_euclid(m[t][t]);
                if q != 0 {
                    for row in m.iter_mut().take(rows).skip(t) {
                        row[j] -= q * row[t];
                    }
                }
                if m[t][j] != 0 {
                    for row in m.iter_mut() {
                        row.swap(t, j);
                    }
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        // pivot must divide every remaining entry
        let mut adjusted = false;
        'scan: for i in t + 1..rows {
            for j in t + 1..cols {
                if m[i][j] % m[t][t] != 0 {
                    for jj in t..cols {
                        let add = m[i][jj];
                        m[t][jj] += add;
                    }
                    adjusted = true;
                    break 'scan;
                }
            }
        }
        if adjusted {
            continue;
        }
        out.push(m[t][t].abs());
        t += 1;
    }
    out
}

/// Feasibility of `{x >= 0 : A x = b}` by phase-one simplex with Bland's
/// rule (exact, terminating).
pub fn lp_eq_feasible(a: &[Vec<Rat>], b: &[Rat]) -> bool {
    let m = a.len();
    if m == 0 {
        return true;
    }
    let n = a[0].len();
    let mut tab: Vec<Vec<Rat>> = Vec::with_capacity(m);
    let mut rhs: Vec<Rat> = Vec::with_capacity(m);
    for i in 0..m {
        let mut row = a[i].clone();
        let mut bi = b[i].clone();
        if bi.is_negative() {
            for x in row.iter_mut() {
                *x = -x.clone();
            }
            bi = -bi;
        }
        row.extend((0..m).map(|k| if k == i { Rat::one() } else { Rat::zero() }));
        tab.push(row);
        rhs.push(bi);
    }
    let total = n + m;
    let cost = |j: usize| if j < n { Rat::zero() } else { Rat::one() };
    let mut basis: Vec<usize> = (n..total).collect();
    loop {
        // reduced costs r_j = c_j - sum_i c_basis[i] * tab[i][j]
        let mut entering = None;
        for j in 0..total {
            if basis.contains(&j) {
                continue;
            }
            let mut r = cost(j);
            for i in 0..m {
                if cost(basis[i]).is_one() {
                    r = r - &tab[i][j];
                }
            }
            if r.is_negative() {
                entering = Some(j);
                break; // Bland: smallest index
            }
        }
        let Some(j) = entering else {
            let obj: Rat = (0..m).filter(|&i| cost(basis[i]).is_one()).map(|i| rhs[i].clone()).sum();
            return obj.is_zero();
        };
        let mut leave: Option<usize> = None;
        for i in 0..m {
            if tab[i][j].is_positive() {
                let better = match leave {
                    None => true,
                    Some(l) => {
                        let cur = &rhs[i] / &tab[i][j];
                        let best = &rhs[l] / &tab[l][j];
                        cur < best || (cur == best && basis[i] < basis[l])
                    }
                };
                if better {
                    leave = Some(i);
                }
            }
        }
        let l = leave.expect("phase-one objective is bounded");
        let piv = tab[l][j].clone();
        for x in tab[l].iter_mut() {
            *x = &*x / &piv;
        }
        rhs[l] = &rhs[l] / &piv;
        for i in 0..m {
            if i != l && !tab[i][j].is_zero() {
                let f = tab[i][j].clone();
                for k in 0..total {
                    let sub = &f * &tab[l][k];
                    tab[i][k] = &tab[i][k] - sub;
                }
                let sub = &f * &rhs[l];
                rhs[i] = &rhs[i] - sub;
            }
        }
        basis[l] = j;
    }
}

/// Is `p` in the convex hull of `pts`?
pub fn in_hull(p: &[Rat], pts: &[Vec<Rat>]) -> bool {
    if pts.is_empty() {
        return false;
    }
    let d = p.len();
    let mut a: Vec<Vec<Rat>> = Vec::with_capacity(d + 1);
    for coord in 0..d {
        a.push(pts.iter().map(|q| q[coord].clone()).collect());
    }
    a.push(vec![Rat::one(); pts.len()]);
    let mut b: Vec<Rat> = p.to_vec();
    b.push(Rat::one());
    lp_eq_feasible(&a, &b)
}

/// Is the segment between vertices `ui` and `vi` a one-dimensional face of
/// the hull?  Tests for a functional equal on the pair and strictly smaller
/// (margin 1 after scaling) on every other point.
pub fn is_edge(pts: &[Vec<Rat>], ui: usize, vi: usize) -> bool {
    let d = pts[ui].len();
    let others: Vec<usize> = (0..pts.len()).filter(|&k| k != ui && k != vi).collect();
    // variables: w+ (d), w- (d), c+ , c-, slack per other point
    let nv = 2 * d + 2 + others.len();
    let mut a: Vec<Vec<Rat>> = Vec::new();
    let mut b: Vec<Rat> = Vec::new();
    let row_for = |pt: &[Rat], slack: Option<usize>, nv: usize, others_len: usize| {
        let _ = others_len;
        let mut row = vec![Rat::zero(); nv];
        for k in 0..d {
            row[k] = pt[k].clone();
            row[d + k] = -pt[k].clone();
        }
        row[2 * d] = -Rat::one();
        row[2 * d + 1] = Rat::one();
        if let Some(s) = slack {
            row[2 * d + 2 + s] = Rat::one();
        }
        row
    };
    a.push(row_for(&pts[ui], None, nv, others.len()));
    b.push(Rat::zero());
    a.push(row_for(&pts[vi], None, nv, others.len()));
    b.push(Rat::zero());
    for (s, &k) in others.iter().enumerate() {
        a.push(row_for(&pts[k], Some(s), nv, others.len()));
        b.push(-Rat::one());
    }
    lp_eq_feasible(&a, &b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn rank_and_nullspace() {
        let m = vec![v(&[1, 2, 3]), v(&[2, 4, 6]), v(&[1, 0, 1])];
        assert_eq!(rank_rat(&m), 2);
        let ns = nullspace_rat(&m, 3);
        assert_eq!(ns.len(), 1);
        for row in &m {
            let dot: Rat = row.iter().zip(&ns[0]).map(|(a, b)| a * b).sum();
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn snf_unimodular_and_not() {
        assert_eq!(snf_divisors(&[vec![1, 0], vec![0, 1]]), vec![1, 1]);
        assert_eq!(snf_divisors(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(snf_divisors(&[vec![2, 4], vec![4, 8]]), vec![2]);
        assert_eq!(snf_divisors(&[vec![1, 1, 0], vec![0, 1, 1]]), vec![1, 1]);
        // rays e_0+e_1, e_0-e_1 span a sublattice of index 2
        assert_eq!(snf_divisors(&[vec![1, 1], vec![1, -1]]), vec![1, 2]);
    }

    #[test]
    fn simplex_feasibility() {
        // x + y = 1, x,y >= 0 feasible
        assert!(lp_eq_feasible(&[v(&[1, 1])], &v(&[1])));
        // x + y = -1 infeasible
        assert!(!lp_eq_feasible(&[v(&[1, 1])], &v(&[-1])));
        // x - y = 0, x + y = 2
        assert!(lp_eq_feasible(&[v(&[1, -1]), v(&[1, 1])], &v(&[0, 2])));
        // x = 1, x = 2 contradictory
        assert!(!lp_eq_feasible(&[v(&[1]), v(&[1])], &v(&[1, 2])));
    }

    #[test]
    fn hull_membership() {
        let square = vec![v(&[1, 1]), v(&[1, -1]), v(&[-1, 1]), v(&[-1, -1])];
        assert!(in_hull(&v(&[0, 0]), &square));
        assert!(in_hull(&v(&[1, 0]), &square));
        let half: Vec<Rat> = vec![rat_frac(1, 2), rat_frac(1, 2)];
        assert!(in_hull(&half, &square));
        assert!(!in_hull(&v(&[2, 0]), &square));
        assert!(!in_hull(&v(&[1, 1]), &square[1..].to_vec()));
    }

    #[test]
    fn edge_detection() {
        let square = vec![v(&[1, 1]), v(&[1, -1]), v(&[-1, 1]), v(&[-1, -1])];
        assert!(is_edge(&square, 0, 1));
        assert!(is_edge(&square, 0, 2));
        assert!(!is_edge(&square, 0, 3)); // diagonal
        let triangle = vec![v(&[1, -1]), v(&[-1, 1]), v(&[-1, -1])];
        for i in 0..3 {
            for j in i + 1..3 {
                assert!(is_edge(&triangle, i, j));
            }
        }
    }

    #[test]
    fn primitive_vectors() {
        let w = vec![rat_frac(1, 2), rat_frac(3, 2), rat(1)];
        let p = primitive_integer(&w);
        assert_eq!(p, vec![BigInt::from(1), BigInt::from(3), BigInt::from(2)]);
    }
}
