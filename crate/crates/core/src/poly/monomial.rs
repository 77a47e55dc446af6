use std::cmp::Ordering;
use std::fmt;

/// A Laurent monomial stored sparsely as `(variable index, exponent)` pairs,
/// sorted by index, with no zero exponents.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(usize, i32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(index: usize) -> Self {
        Monomial(vec![(index, 1)])
    }

    pub fn var_pow(index: usize, exp: i32) -> Self {
        if exp == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(index, exp)])
        }
    }

    /// Builds a monomial from arbitrary pairs; repeated indices are merged.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, i32)>) -> Self {
        let mut v: Vec<(usize, i32)> = pairs.into_iter().collect();
        v.sort_by_key(|&(i, _)| i);
        let mut out: Vec<(usize, i32)> = Vec::with_capacity(v.len());
        for (i, e) in v {
            match out.last_mut() {
                Some(last) if last.0 == i => last.1 += e,
                _ => out.push((i, e)),
            }
        }
        out.retain(|&(_, e)| e != 0);
        Monomial(out)
    }

    /// Dense exponent vector of length `n`; indices `>= n` are ignored.
    pub fn from_dense(exps: &[i32]) -> Self {
        Monomial(exps.iter().enumerate().filter(|(_, &e)| e != 0).map(|(i, &e)| (i, e)).collect())
    }

    pub fn to_dense(&self, n: usize) -> Vec<i32> {
        let mut out = vec![0; n];
        for &(i, e) in &self.0 {
            if i < n {
                out[i] = e;
            }
        }
        out
    }

    pub fn pairs(&self) -> &[(usize, i32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, var: usize) -> i32 {
        match self.0.binary_search_by_key(&var, |&(i, _)| i) {
            Ok(pos) => self.0[pos].1,
            Err(_) => 0,
        }
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&(_, e)| e as i64).sum()
    }

    /// Total degree restricted to the given variables.
    pub fn degree_in(&self, vars: &[usize]) -> i64 {
        self.0.iter().filter(|(i, _)| vars.contains(i)).map(|&(_, e)| e as i64).sum()
    }

    pub fn has_negative(&self) -> bool {
        self.0.iter().any(|&(_, e)| e < 0)
    }

    pub fn max_var(&self) -> Option<usize> {
        self.0.last().map(|&(i, _)| i)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut a, mut b) = (0, 0);
        while a < self.0.len() && b < other.0.len() {
            let (ia, ea) = self.0[a];
            let (ib, eb) = other.0[b];
            match ia.cmp(&ib) {
                Ordering::Less => {
                    out.push((ia, ea));
                    a += 1;
                }
                Ordering::Greater => {
                    out.push((ib, eb));
                    b += 1;
                }
                Ordering::Equal => {
                    if ea + eb != 0 {
                        out.push((ia, ea + eb));
                    }
                    a += 1;
                    b += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[a..]);
        out.extend_from_slice(&other.0[b..]);
        Monomial(out)
    }

    pub fn inverse(&self) -> Monomial {
        Monomial(self.0.iter().map(|&(i, e)| (i, -e)).collect())
    }

    pub fn pow(&self, k: i32) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|&(i, e)| (i, e * k)).collect())
    }

    /// Exponent of `var` removed: returns `(exponent, rest)`.
    pub fn split_var(&self, var: usize) -> (i32, Monomial) {
        let e = self.exponent(var);
        let rest = Monomial(self.0.iter().copied().filter(|&(i, _)| i != var).collect());
        (e, rest)
    }

    /// Whether `self / other` has only nonnegative exponents.
    pub fn divides_into(&self, other: &Monomial) -> bool {
        other.0.iter().all(|&(i, e)| self.exponent(i) >= e)
    }

    pub fn map_vars(&self, f: impl Fn(usize) -> usize) -> Monomial {
        Monomial::from_pairs(self.0.iter().map(|&(i, e)| (f(i), e)))
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, then the exponent of the
    /// lowest-indexed variable where the two differ (larger is greater).
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let (mut a, mut b) = (0, 0);
        loop {
            let pa = self.0.get(a);
            let pb = other.0.get(b);
            match (pa, pb) {
                (None, None) => return Ordering::Equal,
                (Some(&(_, ea)), None) => return ea.cmp(&0),
                (None, Some(&(_, eb))) => return 0.cmp(&eb),
                (Some(&(ia, ea)), Some(&(ib, eb))) => match ia.cmp(&ib) {
                    Ordering::Less => return ea.cmp(&0),
                    Ordering::Greater => return 0.cmp(&eb),
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                        a += 1;
                        b += 1;
                    }
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> =
            self.0.iter().map(|&(i, e)| if e == 1 { format!("v{i}") } else { format!("v{i}^{e}") }).collect();
        write!(f, "{}", parts.join("*"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grlex_order() {
        let x = Monomial::var(0);
        let y = Monomial::var(1);
        let x2 = Monomial::var_pow(0, 2);
        let xy = x.mul(&y);
        let y2 = Monomial::var_pow(1, 2);
        assert!(x > y);
        assert!(x2 > xy && xy > y2);
        assert!(y2 > x);
        assert!(Monomial::one() < y);
        assert!(Monomial::var_pow(0, -1) < Monomial::one());
    }

    #[test]
    fn mul_cancels() {
        let g = Monomial::var(2);
        assert!(g.mul(&g.inverse()).is_one());
        assert_eq!(Monomial::from_pairs([(3, 1), (1, 2), (3, -1)]), Monomial::var_pow(1, 2));
    }
}
