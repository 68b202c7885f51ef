//! The Nahm system `1 − Q_i = ∏_j Q_j^{A_ij}`, the Rogers dilogarithm and
//! the asymptotic constant `α = Σ_i (π²/6 − L(Q_i))`.
//!
//! Double precision is enough here: every check compares against a closed
//! form to `1e-10` or an identity to `1e-12`.

use std::f64::consts::PI;

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::rational;
use crate::report::Report;

const MAX_ITER: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NahmSolution {
    /// Entries as exact rational strings.
    pub matrix: Vec<Vec<String>>,
    #[serde(rename = "Q")]
    pub q: Vec<f64>,
    pub residual: f64,
    pub alpha: f64,
    pub g: f64,
    pub iterations: usize,
}

fn to_float(a: &Matrix) -> Vec<Vec<f64>> {
    a.iter()
        .map(|row| row.iter().map(|x| x.to_f64().expect("finite entry")).collect())
        .collect()
}

/// `1 − ∏_j Q_j^{A_ij}` for each `i`.
fn step(a: &[Vec<f64>], q: &[f64]) -> Vec<f64> {
    let logs: Vec<f64> = q.iter().map(|x| x.ln()).collect();
    a.iter()
        .map(|row| 1.0 - row.iter().zip(&logs).map(|(x, l)| x * l).sum::<f64>().exp())
        .collect()
}

fn residual(a: &[Vec<f64>], q: &[f64]) -> f64 {
    step(a, q).iter().zip(q).map(|(f, x)| (f - x).abs()).fold(0.0, f64::max)
}

/// Damped fixed-point iteration `Q ← (1−θ)Q + θ(1 − ∏ Q^A)` from
/// `Q = (1/2, …, 1/2)`, with `θ` halved whenever a step would increase the
/// residual or leave `(0,1)`. Matrices with large entries make the map far
/// from contractive; once `θ` falls below `1e-3` the iteration switches to
/// Newton steps with backtracking on the same residual.
pub fn solve_nahm_system(a: &Matrix, tol: f64) -> Result<NahmSolution> {
    if !linalg::is_symmetric(a) {
        return Err(Error::NotSymmetric);
    }
    if !linalg::is_positive_definite(a) {
        return Err(Error::NotPositiveDefinite);
    }
    let af = to_float(a);
    let n = af.len();
    let mut q = vec![0.5; n];
    let mut res = residual(&af, &q);
    let mut theta = 1.0;
    let mut iterations = 0;
    while res >= tol && theta >= 1e-3 {
        if iterations >= MAX_ITER {
            return Err(Error::NoConvergence(iterations));
        }
        iterations += 1;
        let f = step(&af, &q);
        let next: Vec<f64> = q.iter().zip(&f).map(|(x, y)| (1.0 - theta) * x + theta * y).collect();
        match accept(&af, &next, res) {
            Some(r) => {
                q = next;
                res = r;
            }
            None => theta /= 2.0,
        }
    }
    'newton: while res >= tol {
        if iterations >= MAX_ITER {
            return Err(Error::NoConvergence(iterations));
        }
        iterations += 1;
        let dir = newton_direction(&af, &q).ok_or(Error::NoConvergence(iterations))?;
        let mut t = 1.0;
        loop {
            let next: Vec<f64> = q.iter().zip(&dir).map(|(x, d)| x + t * d).collect();
            if let Some(r) = accept(&af, &next, res) {
                q = next;
                res = r;
                break;
            }
            t /= 2.0;
            if t < 1e-12 {
                // below 1e-14 the residual is at the rounding floor
                if res < 1e-14 {
                    break 'newton;
                }
                return Err(Error::NoConvergence(iterations));
            }
        }
    }
    let alpha = alpha_from(&q)?;
    Ok(NahmSolution {
        matrix: a.iter().map(|row| row.iter().map(rational::format).collect()).collect(),
        q,
        residual: res,
        alpha,
        g: 6.0 * alpha / (PI * PI),
        iterations,
    })
}

/// `Σ_{n≥1} zⁿ/n² + ½ log z log(1−z)`, summed directly until the tail bound
/// `z^{N+1} / ((N+1)²(1−z))` drops below `tol`.
pub fn rogers_dilog_series(z: f64, tol: f64) -> Result<f64> {
    if !(z > 0.0 && z < 1.0) {
        return Err(Error::DomainError(z));
    }
    let mut sum = 0.0;
    let mut pow = 1.0;
    let mut n = 1.0f64;
    loop {
        pow *= z;
        sum += pow / (n * n);
        let tail = pow * z / ((n + 1.0) * (n + 1.0) * (1.0 - z));
        if tail < tol {
            break;
        }
        n += 1.0;
    }
    Ok(sum + 0.5 * z.ln() * (1.0 - z).ln())
}

/// `Some(residual)` if `q` stays in `(0,1)` and does not increase the residual.
fn accept(a: &[Vec<f64>], q: &[f64], res: f64) -> Option<f64> {
    if q.iter().any(|x| !(*x > 0.0 && *x < 1.0)) {
        return None;
    }
    let r = residual(a, q);
    (r <= res).then_some(r)
}

/// Newton step for `G_i(Q) = Q_i − 1 + ∏_j Q_j^{A_ij}`, whose Jacobian is
/// `δ_ij + A_ij P_i / Q_j`.
fn newton_direction(a: &[Vec<f64>], q: &[f64]) -> Option<Vec<f64>> {
    let n = q.len();
    let p: Vec<f64> = step(a, q).iter().map(|f| 1.0 - f).collect();
    let mut m: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let mut row: Vec<f64> = (0..n)
                .map(|j| if i == j { 1.0 } else { 0.0 } + a[i][j] * p[i] / q[j])
                .collect();
            row.push(-(q[i] - 1.0 + p[i]));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).max_by(|x, y| m[*x][col].abs().total_cmp(&m[*y][col].abs()))?;
        if m[piv][col].abs() < 1e-300 {
            return None;
        }
        m.swap(piv, col);
        for r in 0..n {
            if r != col {
                let f = m[r][col] / m[col][col];
                for c in col..=n {
                    m[r][c] -= f * m[col][c];
                }
            }
        }
    }
    Some((0..n).map(|i| m[i][n] / m[i][i]).collect())
}

/// Rogers dilogarithm on `(0,1)`; arguments above `1/2` go through
/// `L(z) = π²/6 − L(1−z)` so the series always converges geometrically.
pub fn rogers_dilog(z: f64, tol: f64) -> Result<f64> {
    if !(z > 0.0 && z < 1.0) {
        return Err(Error::DomainError(z));
    }
    if z <= 0.5 {
        rogers_dilog_series(z, tol)
    } else {
        Ok(PI * PI / 6.0 - rogers_dilog_series(1.0 - z, tol)?)
    }
}

fn alpha_from(q: &[f64]) -> Result<f64> {
    q.iter()
        .map(|x| rogers_dilog(*x, 1e-17).map(|l| PI * PI / 6.0 - l))
        .sum()
}

/// `α = Σ_i (π²/6 − L(Q_i))` at the solution of the system for `A`.
pub fn alpha_of(a: &Matrix) -> Result<f64> {
    Ok(solve_nahm_system(a, 1e-13)?.alpha)
}

/// The two-dimensional matrix whose solution has the printed closed form.
pub fn ising_matrix() -> Matrix {
    let i = rational::int;
    vec![vec![i(8), i(3)], vec![i(3), i(2)]]
}

pub fn closed_form_q1() -> f64 {
    let r = (2.0 * 2f64.sqrt() - 1.0).sqrt();
    0.5 * (r + 2f64.sqrt() - 1.0)
}

pub fn closed_form_q2() -> f64 {
    let r = (2.0 * 2f64.sqrt() - 1.0).sqrt();
    2.0 / (r - 2f64.sqrt() + 3.0)
}

/// Solution, closed forms, `α = π²/12` and the reflection identity.
pub fn nahm_alpha_report() -> Result<(Report, NahmSolution)> {
    let mut report = Report::new("Nahm system asymptotics", "double precision");
    let sol = solve_nahm_system(&ising_matrix(), 1e-13)?;
    report.push("residual below 1e-12", sol.residual < 1e-12, format!("{:e}", sol.residual));
    let d1 = (sol.q[0] - closed_form_q1()).abs();
    let d2 = (sol.q[1] - closed_form_q2()).abs();
    report.push("Q1 matches the closed form", d1 < 1e-10, format!("Q1 = {:.12}, |diff| = {d1:e}", sol.q[0]));
    report.push("Q2 matches the closed form", d2 < 1e-10, format!("Q2 = {:.12}, |diff| = {d2:e}", sol.q[1]));
    let da = (sol.alpha - PI * PI / 12.0).abs();
    report.push("alpha = pi^2/12", da < 1e-10, format!("alpha = {:.14}, |diff| = {da:e}", sol.alpha));
    report.push("g = 1/2", (sol.g - 0.5).abs() < 1e-10, format!("g = {:.14}", sol.g));
    let mut worst = 0.0f64;
    for k in 1..=9 {
        let z = k as f64 / 10.0;
        let s = rogers_dilog_series(z, 1e-17)? + rogers_dilog_series(1.0 - z, 1e-17)?;
        worst = worst.max((s - PI * PI / 6.0).abs());
    }
    report.push("L(z) + L(1-z) = pi^2/6 on z = 0.1..0.9", worst < 1e-12, format!("max |diff| = {worst:e}"));
    Ok((report, sol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::NahmData;
    use proptest::prelude::*;

    #[test]
    fn ising_system() {
        let (report, sol) = nahm_alpha_report().unwrap();
        assert!(report.passed, "{report}");
        assert!((sol.q[0] - 0.8832035059).abs() < 1e-10);
        assert!((sol.q[1] - 0.6807398542).abs() < 1e-10);
    }

    #[test]
    fn rogers_ramanujan_point() {
        let sol = solve_nahm_system(&vec![vec![rational::int(2)]], 1e-14).unwrap();
        let golden = (5f64.sqrt() - 1.0) / 2.0;
        assert!((sol.q[0] - golden).abs() < 1e-12);
        assert!((1.0 - sol.q[0] - sol.q[0] * sol.q[0]).abs() < 1e-13);
        assert!((sol.g - 0.4).abs() < 1e-10, "g = {}", sol.g);
    }

    #[test]
    fn e8_effective_central_charge() {
        let sol = solve_nahm_system(NahmData::e8().a(), 1e-13).unwrap();
        assert!(sol.q.iter().all(|x| *x > 0.0 && *x < 1.0));
        assert!((sol.g - 0.5).abs() < 1e-8, "g = {}", sol.g);
    }

    #[test]
    fn andrews_gordon_effective_central_charge() {
        // effective central charge 1 − 6/(pp') of the (2, 2s+1) model
        for s in 2..=4usize {
            let a = NahmData::andrews_gordon(s).unwrap();
            let g = solve_nahm_system(a.a(), 1e-13).unwrap().g;
            let want = 1.0 - 3.0 / (2 * s + 1) as f64;
            assert!((g - want).abs() < 1e-9, "s = {s}: g = {g}");
        }
    }

    #[test]
    fn dilog_special_values() {
        assert!((rogers_dilog(0.5, 1e-17).unwrap() - PI * PI / 12.0).abs() < 1e-14);
        assert!(rogers_dilog(1e-9, 1e-17).unwrap().abs() < 1e-6);
        assert_eq!(rogers_dilog(0.0, 1e-12), Err(Error::DomainError(0.0)));
        assert_eq!(rogers_dilog(1.0, 1e-12), Err(Error::DomainError(1.0)));
        assert!(rogers_dilog(f64::NAN, 1e-12).is_err());
    }

    #[test]
    fn rejects_bad_matrices() {
        let i = rational::int;
        assert_eq!(solve_nahm_system(&vec![vec![i(1), i(2)], vec![i(3), i(1)]], 1e-12), Err(Error::NotSymmetric));
        assert_eq!(solve_nahm_system(&vec![vec![i(1), i(2)], vec![i(2), i(1)]], 1e-12), Err(Error::NotPositiveDefinite));
    }

    proptest! {
        #[test]
        fn reflection(z in 0.01f64..0.99) {
            let s = rogers_dilog_series(z, 1e-17).unwrap() + rogers_dilog_series(1.0 - z, 1e-17).unwrap();
            prop_assert!((s - PI * PI / 6.0).abs() < 1e-12);
        }

        #[test]
        fn dilog_is_increasing(z in 0.01f64..0.98) {
            prop_assert!(rogers_dilog(z, 1e-17).unwrap() < rogers_dilog(z + 0.01, 1e-17).unwrap());
        }
    }
}
