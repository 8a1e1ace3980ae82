//! Exact bounded simplex in dictionary form with incremental bound
//! assertion and backtracking.
//!
//! Every row defines a slack variable as a linear combination of the
//! structural variables. Feasibility is restored with Bland's rule (smallest
//! violating basic variable, smallest eligible nonbasic variable), which
//! guarantees termination. Loosening bounds never invalidates the current
//! assignment, so backtracking only restores bounds.

use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Status {
    Feasible,
    Infeasible,
}

#[derive(Clone)]
pub(crate) struct Simplex {
    /// `rows[r][c]`: coefficient of the variable in column `c` for the basic
    /// variable of row `r`.
    rows: Vec<Vec<Rational>>,
    basic: Vec<usize>,
    nonbasic: Vec<usize>,
    /// For each variable: `Ok(row)` if basic, `Err(column)` if nonbasic.
    place: Vec<Result<usize, usize>>,
    value: Vec<Rational>,
    lower: Vec<Option<Rational>>,
    upper: Vec<Option<Rational>>,
    trail: Vec<(usize, Option<Rational>, Option<Rational>)>,
    marks: Vec<usize>,
    /// Set when an asserted bound crossed the opposite bound of the same
    /// variable; cleared by backtracking past it.
    crossed: Option<usize>,
    pivots: u64,
}

impl Simplex {
    /// `structural` variables start nonbasic at value zero; each row
    /// `[(var, coeff)]` over structural variables introduces one slack.
    pub(crate) fn new(structural: usize, rows: &[Vec<(usize, Rational)>]) -> Self {
        let total = structural + rows.len();
        let mut dense = Vec::with_capacity(rows.len());
        for row in rows {
            let mut d = vec![Rational::zero(); structural];
            for (v, c) in row {
                d[*v] += c;
            }
            dense.push(d);
        }
        let mut place = Vec::with_capacity(total);
        place.extend((0..structural).map(Err));
        place.extend((0..rows.len()).map(Ok));
        Simplex {
            rows: dense,
            basic: (structural..total).collect(),
            nonbasic: (0..structural).collect(),
            place,
            value: vec![Rational::zero(); total],
            lower: vec![None; total],
            upper: vec![None; total],
            trail: Vec::new(),
            marks: Vec::new(),
            crossed: None,
            pivots: 0,
        }
    }

    pub(crate) fn slack(&self, structural: usize, row: usize) -> usize {
        structural + row
    }

    pub(crate) fn value(&self, var: usize) -> &Rational {
        &self.value[var]
    }

    pub(crate) fn pivots(&self) -> u64 {
        self.pivots
    }

    pub(crate) fn push(&mut self) {
        self.marks.push(self.trail.len());
    }

    pub(crate) fn pop(&mut self) {
        let mark = self.marks.pop().expect("pop without push");
        while self.trail.len() > mark {
            let (v, lo, up) = self.trail.pop().unwrap();
            self.lower[v] = lo;
            self.upper[v] = up;
        }
        if let Some(level) = self.crossed {
            if level > self.marks.len() {
                self.crossed = None;
            }
        }
    }

    fn record(&mut self, v: usize) {
        self.trail.push((v, self.lower[v].clone(), self.upper[v].clone()));
    }

    pub(crate) fn assert_lower(&mut self, v: usize, bound: Rational) {
        if self.lower[v].as_ref().is_some_and(|l| *l >= bound) {
            return;
        }
        let crossing = self.upper[v].as_ref().is_some_and(|u| *u < bound);
        if crossing && self.crossed.is_none() {
            self.crossed = Some(self.marks.len());
        }
        self.record(v);
        if !crossing && self.place[v].is_err() {
            if self.value[v] < bound {
                self.update_nonbasic(v, bound.clone());
            }
        }
        self.lower[v] = Some(bound);
    }

    pub(crate) fn assert_upper(&mut self, v: usize, bound: Rational) {
        if self.upper[v].as_ref().is_some_and(|u| *u <= bound) {
            return;
        }
        let crossing = self.lower[v].as_ref().is_some_and(|l| *l > bound);
        if crossing && self.crossed.is_none() {
            self.crossed = Some(self.marks.len());
        }
        self.record(v);
        if !crossing && self.place[v].is_err() {
            if self.value[v] > bound {
                self.update_nonbasic(v, bound.clone());
            }
        }
        self.upper[v] = Some(bound);
    }

    fn update_nonbasic(&mut self, v: usize, new: Rational) {
        let col = self.place[v].unwrap_err();
        let delta = &new - &self.value[v];
        for (r, row) in self.rows.iter().enumerate() {
            let a = &row[col];
            if !a.is_zero() {
                let b = self.basic[r];
                self.value[b] = &self.value[b] + &(a * &delta);
            }
        }
        self.value[v] = new;
    }

    fn below(&self, v: usize) -> bool {
        self.lower[v].as_ref().is_some_and(|l| self.value[v] < *l)
    }

    fn above(&self, v: usize) -> bool {
        self.upper[v].as_ref().is_some_and(|u| self.value[v] > *u)
    }

    fn can_increase(&self, v: usize) -> bool {
        self.upper[v].as_ref().map_or(true, |u| self.value[v] < *u)
    }

    fn can_decrease(&self, v: usize) -> bool {
        self.lower[v].as_ref().map_or(true, |l| self.value[v] > *l)
    }

    /// Restores feasibility of all bounds or proves none exists.
    pub(crate) fn check(&mut self) -> Status {
        if self.crossed.is_some() {
            return Status::Infeasible;
        }
        loop {
            let violated = self
                .basic
                .iter()
                .enumerate()
                .filter(|&(_, &b)| self.below(b) || self.above(b))
                .min_by_key(|&(_, &b)| b)
                .map(|(r, &b)| (r, b));
            let Some((r, b)) = violated else {
                return Status::Feasible;
            };
            let raise = self.below(b);
            let row = &self.rows[r];
            let entering = (0..self.nonbasic.len())
                .filter(|&c| {
                    let a = &row[c];
                    let x = self.nonbasic[c];
                    if a.is_zero() {
                        return false;
                    }
                    let up = a.is_positive() == raise;
                    if up {
                        self.can_increase(x)
                    } else {
                        self.can_decrease(x)
                    }
                })
                .min_by_key(|&c| self.nonbasic[c]);
            let Some(c) = entering else {
                return Status::Infeasible;
            };
            let target = if raise { self.lower[b].clone() } else { self.upper[b].clone() }.unwrap();
            self.pivot_and_update(r, c, target);
        }
    }

    fn pivot_and_update(&mut self, r: usize, c: usize, target: Rational) {
        let b = self.basic[r];
        let x = self.nonbasic[c];
        let theta = &(&target - &self.value[b]) / &self.rows[r][c];
        self.value[b] = target;
        self.value[x] = &self.value[x] + &theta;
        for (k, row) in self.rows.iter().enumerate() {
            if k != r && !row[c].is_zero() {
                let bk = self.basic[k];
                self.value[bk] = &self.value[bk] + &(&row[c] * &theta);
            }
        }
        self.pivot(r, c);
    }

    fn pivot(&mut self, r: usize, c: usize) {
        self.pivots += 1;
        let a = self.rows[r][c].clone();
        let inv = a.recip();
        // b = a*x + sum(t_j * y_j)  =>  x = b/a - sum(t_j/a * y_j)
        let mut pivot_row = std::mem::take(&mut self.rows[r]);
        for (j, t) in pivot_row.iter_mut().enumerate() {
            *t = if j == c { inv.clone() } else if t.is_zero() { continue } else { -(&*t * &inv) };
        }
        for (k, row) in self.rows.iter_mut().enumerate() {
            if k == r {
                continue;
            }
            let f = std::mem::take(&mut row[c]);
            if f.is_zero() {
                continue;
            }
            for (j, p) in pivot_row.iter().enumerate() {
                if j == c {
                    row[j] = &f * p;
                } else if !p.is_zero() {
                    row[j] += &(&f * p);
                }
            }
        }
        self.rows[r] = pivot_row;
        let (b, x) = (self.basic[r], self.nonbasic[c]);
        self.basic[r] = x;
        self.nonbasic[c] = b;
        self.place[x] = Ok(r);
        self.place[b] = Err(c);
    }

    /// Checks that basic values match their rows; used by tests.
    #[cfg(test)]
    pub(crate) fn consistent(&self) -> bool {
        self.rows.iter().enumerate().all(|(r, row)| {
            let s: Rational = row.iter().enumerate().map(|(c, a)| a * &self.value[self.nonbasic[c]]).sum();
            s == self.value[self.basic[r]]
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn finds_feasible_point_and_backtracks() {
        // s0 = x + y, s1 = x - y
        let mut s = Simplex::new(2, &[vec![(0, q(1)), (1, q(1))], vec![(0, q(1)), (1, q(-1))]]);
        s.assert_lower(0, q(0));
        s.assert_lower(1, q(0));
        s.assert_lower(2, q(4));
        s.assert_upper(3, q(-2));
        assert_eq!(s.check(), Status::Feasible);
        assert!(s.consistent());
        let (x, y) = (s.value(0).clone(), s.value(1).clone());
        assert!(&x + &y >= q(4) && &x - &y <= q(-2) && !x.is_negative() && !y.is_negative());

        s.push();
        s.assert_upper(2, q(1));
        s.assert_lower(3, q(0));
        // x + y <= 1 and x - y <= -2 force y >= 1 + ... ; with x >= 0: y >= 2 contradicts x + y <= 1
        assert_eq!(s.check(), Status::Infeasible);
        s.pop();
        assert_eq!(s.check(), Status::Feasible);
        assert!(s.consistent());
    }

    #[test]
    fn crossed_bounds_are_infeasible_until_popped() {
        let mut s = Simplex::new(1, &[vec![(0, q(1))]]);
        s.assert_lower(0, q(1));
        s.push();
        s.assert_upper(0, q(0));
        assert_eq!(s.check(), Status::Infeasible);
        s.pop();
        assert_eq!(s.check(), Status::Feasible);
    }
}
