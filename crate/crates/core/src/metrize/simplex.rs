//! Dense exact simplex for `max c.z  s.t.  A z <= b, z >= 0`.
//!
//! Dictionary form with Bland's rule, so it cannot cycle. Negative
//! right-hand sides are handled by the one-artificial-variable phase 1:
//! the artificial enters on the most infeasible row, which makes the
//! auxiliary dictionary feasible in a single pivot.

use crate::weights::Rational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone)]
pub enum LpOutcome {
    Optimal {
        z: Vec<Rational>,
        value: Rational,
        /// one dual value per row; complementary to the primal
        duals: Vec<Rational>,
    },
    Infeasible,
    Unbounded,
}

struct Dict {
    // basic[r] = variable index basic in row r
    basic: Vec<usize>,
    // nonbasic[j] = variable index of column j
    nonbasic: Vec<usize>,
    // row r: x_basic[r] = rhs[r] - sum_j a[r][j] * x_nonbasic[j]
    a: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    // objective = obj0 + sum_j obj[j] * x_nonbasic[j]
    obj: Vec<Rational>,
    obj0: Rational,
}

impl Dict {
    fn pivot(&mut self, r: usize, j: usize) {
        let p = self.a[r][j].clone();
        let inv = Rational::one() / &p;
        // solve row r for the entering variable
        for k in 0..self.nonbasic.len() {
            if k == j {
                self.a[r][k] = inv.clone();
            } else if !self.a[r][k].is_zero() {
                self.a[r][k] = &self.a[r][k] * &inv;
            }
        }
        self.rhs[r] = &self.rhs[r] * &inv;
        let row_r = self.a[r].clone();
        let rhs_r = self.rhs[r].clone();
        for i in 0..self.basic.len() {
            if i == r || self.a[i][j].is_zero() {
                continue;
            }
            let f = self.a[i][j].clone();
            for k in 0..self.nonbasic.len() {
                if k == j {
                    self.a[i][k] = -(&f * &row_r[k]);
                } else if !row_r[k].is_zero() {
                    self.a[i][k] = &self.a[i][k] - &f * &row_r[k];
                }
            }
            self.rhs[i] = &self.rhs[i] - &f * &rhs_r;
        }
        let f = self.obj[j].clone();
        if !f.is_zero() {
            for k in 0..self.nonbasic.len() {
                if k == j {
                    self.obj[k] = -(&f * &row_r[k]);
                } else if !row_r[k].is_zero() {
                    self.obj[k] = &self.obj[k] - &f * &row_r[k];
                }
            }
            self.obj0 = &self.obj0 + &f * &rhs_r;
        }
        std::mem::swap(&mut self.basic[r], &mut self.nonbasic[j]);
    }

    /// Bland's rule iterations; `false` when unbounded.
    fn optimize(&mut self) -> bool {
        loop {
            let entering = (0..self.nonbasic.len())
                .filter(|&j| self.obj[j].is_positive())
                .min_by_key(|&j| self.nonbasic[j]);
            let Some(j) = entering else { return true };
            let mut leave: Option<(usize, Rational)> = None;
            for r in 0..self.basic.len() {
                if self.a[r][j].is_positive() {
                    let ratio = &self.rhs[r] / &self.a[r][j];
                    let better = match &leave {
                        None => true,
                        Some((lr, lv)) => ratio < *lv || (ratio == *lv && self.basic[r] < self.basic[*lr]),
                    };
                    if better {
                        leave = Some((r, ratio));
                    }
                }
            }
            let Some((r, _)) = leave else { return false };
            self.pivot(r, j);
        }
    }
}

/// Solve `max c.z` subject to `a z <= b`, `z >= 0`.
pub fn solve(a: &[Vec<Rational>], b: &[Rational], c: &[Rational]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    // variables: 0..n original, n..n+m slacks, n+m artificial
    let art = n + m;
    let mut d = Dict {
        basic: (n..n + m).collect(),
        nonbasic: (0..n).collect(),
        a: a.to_vec(),
        rhs: b.to_vec(),
        obj: c.to_vec(),
        obj0: Rational::zero(),
    };
    let worst = (0..m).filter(|&r| b[r].is_negative()).min_by(|&x, &y| b[x].cmp(&b[y]).then(x.cmp(&y)));
    if let Some(r0) = worst {
        // phase 1: maximise -x_art with x_art added to every row
        for row in d.a.iter_mut() {
            row.push(-Rational::one());
        }
        d.nonbasic.push(art);
        let real_obj = std::mem::replace(&mut d.obj, vec![Rational::zero(); n]);
        d.obj.push(-Rational::one());
        d.pivot(r0, n);
        let bounded = d.optimize();
        debug_assert!(bounded);
        if d.obj0.is_negative() {
            return LpOutcome::Infeasible;
        }
        // drive the artificial out of the basis if it is still there
        if let Some(r) = d.basic.iter().position(|&v| v == art) {
            let j = (0..d.nonbasic.len()).find(|&j| !d.a[r][j].is_zero()).expect("degenerate artificial row");
            d.pivot(r, j);
        }
        let j = d.nonbasic.iter().position(|&v| v == art).unwrap();
        for row in d.a.iter_mut() {
            row.remove(j);
        }
        d.nonbasic.remove(j);
        // re-express the real objective over the current nonbasics
        d.obj = vec![Rational::zero(); d.nonbasic.len()];
        d.obj0 = Rational::zero();
        for (var, coef) in real_obj.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            if let Some(k) = d.nonbasic.iter().position(|&v| v == var) {
                d.obj[k] = &d.obj[k] + coef;
            } else if let Some(r) = d.basic.iter().position(|&v| v == var) {
                d.obj0 = &d.obj0 + coef * &d.rhs[r];
                for k in 0..d.nonbasic.len() {
                    d.obj[k] = &d.obj[k] - coef * &d.a[r][k];
                }
            }
        }
    }
    if !d.optimize() {
        return LpOutcome::Unbounded;
    }
    let mut z = vec![Rational::zero(); n];
    for (r, &v) in d.basic.iter().enumerate() {
        if v < n {
            z[v] = d.rhs[r].clone();
        }
    }
    let mut duals = vec![Rational::zero(); m];
    for (k, &v) in d.nonbasic.iter().enumerate() {
        if (n..n + m).contains(&v) {
            duals[v - n] = -d.obj[k].clone();
        }
    }
    LpOutcome::Optimal { z, value: d.obj0, duals }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::{int, ratio};

    fn r(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn textbook_example() {
        // max 5x + 4y + 3z; 2x+3y+z<=5, 4x+y+2z<=11, 3x+4y+2z<=8
        let a = vec![r(&[2, 3, 1]), r(&[4, 1, 2]), r(&[3, 4, 2])];
        match solve(&a, &r(&[5, 11, 8]), &r(&[5, 4, 3])) {
            LpOutcome::Optimal { z, value, duals } => {
                assert_eq!(value, int(13));
                assert_eq!(z, r(&[2, 0, 1]));
                // strong duality
                let dv: Rational = duals.iter().zip(r(&[5, 11, 8])).map(|(y, b)| y * b).sum();
                assert_eq!(dv, value);
            }
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn negative_rhs_needs_phase_one() {
        // max -x - y ; -x - y <= -2 ; x <= 3  => value -2
        let a = vec![r(&[-1, -1]), r(&[1, 0])];
        match solve(&a, &r(&[-2, 3]), &r(&[-1, -1])) {
            LpOutcome::Optimal { value, duals, .. } => {
                assert_eq!(value, int(-2));
                assert_eq!(duals, vec![int(1), int(0)]);
            }
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        // x <= -1 with x >= 0
        assert!(matches!(solve(&[r(&[1])], &r(&[-1]), &r(&[1])), LpOutcome::Infeasible));
        assert!(matches!(solve(&[r(&[-1])], &r(&[0]), &r(&[1])), LpOutcome::Unbounded));
    }

    #[test]
    fn fractional_optimum() {
        // max x + y ; 3x + y <= 2 ; x + 3y <= 2  => x = y = 1/2
        let a = vec![r(&[3, 1]), r(&[1, 3])];
        match solve(&a, &r(&[2, 2]), &r(&[1, 1])) {
            LpOutcome::Optimal { z, value, .. } => {
                assert_eq!(z, vec![ratio(1, 2), ratio(1, 2)]);
                assert_eq!(value, int(1));
            }
            o => panic!("{o:?}"),
        }
    }
}
