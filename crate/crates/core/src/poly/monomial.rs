use std::cmp::Ordering;

/// Upper bound on the number of variables of any ring.
pub const MAX_VARS: usize = 8;

/// Exponent vector. Unused trailing slots are zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub(crate) [u16; MAX_VARS]);

impl std::fmt::Debug for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}", &self.0)
    }
}

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; MAX_VARS])
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS);
        let mut m = [0u16; MAX_VARS];
        for (slot, &e) in m.iter_mut().zip(exps) {
            *slot = u16::try_from(e).expect("exponent overflow");
        }
        Monomial(m)
    }

    pub fn var(i: usize, e: u32) -> Self {
        let mut m = Monomial::one();
        m.0[i] = u16::try_from(e).expect("exponent overflow");
        m
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u32 {
        self.0[i] as u32
    }

    pub fn exponents(&self, nvars: usize) -> Vec<u32> {
        self.0[..nvars].iter().map(|&e| e as u32).collect()
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    #[inline]
    pub fn weighted_degree(&self, weights: &[u32]) -> u32 {
        self.0.iter().zip(weights).map(|(&e, &w)| e as u32 * w).sum()
    }

    /// Degree in the variables selected by `mask` (bit `i` = variable `i`).
    #[inline]
    pub fn masked_degree(&self, mask: u16) -> u32 {
        self.0
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e as u32)
            .sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = [0u16; MAX_VARS];
        for i in 0..MAX_VARS {
            out[i] = self.0[i].checked_add(other.0[i]).expect("exponent overflow");
        }
        Monomial(out)
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    #[inline]
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = [0u16; MAX_VARS];
        for i in 0..MAX_VARS {
            out[i] = other.0[i].checked_sub(self.0[i])?;
        }
        Some(Monomial(out))
    }

    #[inline]
    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut out = [0u16; MAX_VARS];
        for i in 0..MAX_VARS {
            out[i] = self.0[i].max(other.0[i]);
        }
        Monomial(out)
    }

    #[inline]
    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Bit `i` set iff variable `i` occurs.
    #[inline]
    pub fn support(&self) -> u16 {
        self.0
            .iter()
            .enumerate()
            .fold(0u16, |acc, (i, &e)| if e > 0 { acc | 1 << i } else { acc })
    }
}

/// A monomial order on a ring whose variables carry positive weights
/// (weight 0 is tolerated only for eliminated variables).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Weighted degree, ties broken reverse-lexicographically from the last variable.
    DegRevLex,
    /// Pure lexicographic, `x_0 > x_1 > ...`.
    Lex,
    /// Degree in the masked block first, then `DegRevLex`. Eliminates the block.
    Elimination(u16),
}

impl MonomialOrder {
    #[inline]
    pub fn compare(&self, a: &Monomial, b: &Monomial, weights: &[u32]) -> Ordering {
        match self {
            MonomialOrder::DegRevLex => degrevlex(a, b, weights),
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::Elimination(mask) => a
                .masked_degree(*mask)
                .cmp(&b.masked_degree(*mask))
                .then_with(|| degrevlex(a, b, weights)),
        }
    }
}

#[inline]
fn degrevlex(a: &Monomial, b: &Monomial, weights: &[u32]) -> Ordering {
    let da = a.weighted_degree(weights);
    let db = b.weighted_degree(weights);
    if da != db {
        return da.cmp(&db);
    }
    for i in (0..MAX_VARS).rev() {
        if a.0[i] != b.0[i] {
            return b.0[i].cmp(&a.0[i]);
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrevlex_breaks_ties_from_the_last_variable() {
        let w = [1u32; MAX_VARS];
        let x0x2 = Monomial::from_exponents(&[1, 0, 1]);
        let x1sq = Monomial::from_exponents(&[0, 2, 0]);
        // x1^2 > x0*x2 in degrevlex (x2 has the smaller exponent in x1^2).
        assert_eq!(MonomialOrder::DegRevLex.compare(&x1sq, &x0x2, &w), Ordering::Greater);
        assert_eq!(MonomialOrder::Lex.compare(&x1sq, &x0x2, &w), Ordering::Less);
    }

    #[test]
    fn elimination_order_puts_block_first() {
        let w = [1u32; MAX_VARS];
        let t = Monomial::var(0, 1);
        let big = Monomial::from_exponents(&[0, 5, 5]);
        assert_eq!(MonomialOrder::Elimination(1).compare(&t, &big, &w), Ordering::Greater);
    }

    #[test]
    fn quotient_and_lcm() {
        let a = Monomial::from_exponents(&[2, 1, 0]);
        let b = Monomial::from_exponents(&[1, 3, 1]);
        let l = a.lcm(&b);
        assert_eq!(l, Monomial::from_exponents(&[2, 3, 1]));
        assert_eq!(a.quotient_of(&l), Some(Monomial::from_exponents(&[0, 2, 1])));
        assert_eq!(b.quotient_of(&a), None);
        assert!(!a.is_coprime(&b));
        assert!(Monomial::var(0, 1).is_coprime(&Monomial::var(1, 2)));
    }
}
