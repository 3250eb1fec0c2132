use std::cmp::Ordering;
use std::fmt;

/// A monomial `CP_1^{e_1} CP_2^{e_2} ...` in the generators of the graded ring.
///
/// Stored as a dense exponent vector (`exps[i - 1]` is the exponent of
/// generator `i`) with trailing zeros trimmed, so equal monomials have equal
/// representations. `|CP_i| = 2i`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { exps: Vec::new() }
    }

    /// The single generator `CP_i`, `i >= 1`.
    pub fn generator(i: usize) -> Self {
        assert!(i >= 1, "generator indices start at 1");
        let mut exps = vec![0; i];
        exps[i - 1] = 1;
        Monomial { exps }
    }

    pub fn from_exponents(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial { exps }
    }

    /// Builds a monomial from `(generator, exponent)` pairs; repeated
    /// generators accumulate.
    pub fn from_pairs(pairs: &[(usize, u32)]) -> Self {
        let len = pairs.iter().map(|&(i, _)| i).max().unwrap_or(0);
        let mut exps = vec![0; len];
        for &(i, e) in pairs {
            assert!(i >= 1, "generator indices start at 1");
            exps[i - 1] += e;
        }
        Self::from_exponents(exps)
    }

    /// A monomial with one factor per entry of `parts` (e.g. a partition).
    pub fn from_factors(parts: &[usize]) -> Self {
        let pairs: Vec<_> = parts.iter().map(|&i| (i, 1)).collect();
        Self::from_pairs(&pairs)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.exps.get(i.wrapping_sub(1)).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    /// Half of the topological dimension: `sum i * e_i`.
    pub fn weight(&self) -> u32 {
        self.exps.iter().enumerate().map(|(i, &e)| (i as u32 + 1) * e).sum()
    }

    pub fn dimension(&self) -> u32 {
        2 * self.weight()
    }

    /// Iterates `(generator, exponent)` over the nonzero exponents.
    pub fn factors(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, &e)| (i + 1, e))
    }

    /// The generator indices with multiplicity, weakly decreasing.
    pub fn to_parts(&self) -> Vec<usize> {
        let mut parts = Vec::new();
        for (i, e) in self.factors() {
            parts.extend(std::iter::repeat_n(i, e as usize));
        }
        parts.reverse();
        parts
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (long, short) = if self.exps.len() >= other.exps.len() {
            (&self.exps, &other.exps)
        } else {
            (&other.exps, &self.exps)
        };
        let mut exps = long.clone();
        for (e, s) in exps.iter_mut().zip(short.iter()) {
            *e += s;
        }
        Monomial { exps }
    }

    /// Number of generator factors counted with multiplicity.
    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }
}

impl Ord for Monomial {
    /// Graded by dimension, then lexicographic on `(e_1, e_2, ...)`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight().cmp(&other.weight()).then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Monomial {
    /// Text form with generators named `{var}1, {var}2, ...`.
    pub fn render(&self, var: &str) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        let parts: Vec<String> = self
            .factors()
            .map(|(i, e)| if e == 1 { format!("{var}{i}") } else { format!("{var}{i}^{e}") })
            .collect();
        parts.join("*")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("CP"))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All monomials of weight `w` (dimension `2w`), in ascending monomial order.
pub fn monomials_of_weight(w: u32) -> Vec<Monomial> {
    let mut out: Vec<Monomial> = crate::partition::partitions(w as usize)
        .into_iter()
        .map(|p| Monomial::from_factors(p.parts()))
        .collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trimming_and_order() {
        let a = Monomial::from_exponents(vec![2, 0, 0]);
        assert_eq!(a, Monomial::from_pairs(&[(1, 2)]));
        assert_eq!(a.dimension(), 4);
        let cp2 = Monomial::generator(2);
        assert!(cp2 < a);
        assert!(Monomial::generator(1) < cp2);
        assert_eq!(a.mul(&cp2).to_string(), "CP1^2*CP2");
        assert_eq!(Monomial::one().to_string(), "1");
    }

    #[test]
    fn weight_enumeration() {
        let ms = monomials_of_weight(4);
        assert_eq!(ms.len(), 5);
        assert!(ms.windows(2).all(|w| w[0] < w[1]));
        assert!(ms.iter().all(|m| m.weight() == 4));
        assert_eq!(ms[0], Monomial::generator(4));
        assert_eq!(ms[4], Monomial::from_pairs(&[(1, 4)]));
    }
}
