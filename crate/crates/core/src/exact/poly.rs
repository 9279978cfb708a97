use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::ring::{ExactDiv, Ring};

/// A monomial as a list of `(variable, exponent)` pairs.
///
/// Factors are kept sorted by *decreasing* variable with positive exponents,
/// so the derived ordering is the lexicographic monomial order in which the
/// largest variable is compared first, then its exponent, then the next one.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial<V> {
    factors: Vec<(V, u32)>,
}

impl<V: Ord + Clone> Monomial<V> {
    pub fn one() -> Self {
        Monomial { factors: Vec::new() }
    }

    pub fn var(v: V) -> Self {
        Monomial { factors: vec![(v, 1)] }
    }

    pub fn from_factors<I: IntoIterator<Item = (V, u32)>>(factors: I) -> Self {
        let mut acc: BTreeMap<V, u32> = BTreeMap::new();
        for (v, e) in factors {
            if e > 0 {
                *acc.entry(v).or_insert(0) += e;
            }
        }
        Monomial {
            factors: acc.into_iter().rev().collect(),
        }
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Factors in decreasing variable order.
    pub fn factors(&self) -> &[(V, u32)] {
        &self.factors
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|(_, e)| *e).sum()
    }

    pub fn exponent(&self, v: &V) -> u32 {
        self.factors
            .iter()
            .find(|(w, _)| w == v)
            .map_or(0, |(_, e)| *e)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        while i < self.factors.len() && j < other.factors.len() {
            let (a, ea) = &self.factors[i];
            let (b, eb) = &other.factors[j];
            match a.cmp(b) {
                std::cmp::Ordering::Greater => {
                    out.push((a.clone(), *ea));
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((b.clone(), *eb));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a.clone(), ea + eb));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.factors[i..]);
        out.extend_from_slice(&other.factors[j..]);
        Monomial { factors: out }
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Self) -> Option<Self> {
        let mut out = Vec::with_capacity(self.factors.len());
        let mut j = 0;
        for (v, e) in &self.factors {
            let mut e = *e;
            if j < other.factors.len() && other.factors[j].0 == *v {
                let d = other.factors[j].1;
                if d > e {
                    return None;
                }
                e -= d;
                j += 1;
            }
            if e > 0 {
                out.push((v.clone(), e));
            }
        }
        if j < other.factors.len() {
            return None;
        }
        Some(Monomial { factors: out })
    }
}

/// Sparse polynomial with coefficients in `C`; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<V: Ord, C> {
    terms: BTreeMap<Monomial<V>, C>,
}

impl<V: Ord + Clone, C: Ring> Poly<V, C> {
    pub fn zero() -> Self {
        Poly {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(Monomial::one(), c)
    }

    pub fn var(v: V) -> Self {
        Self::monomial(Monomial::var(v), C::one())
    }

    pub fn monomial(m: Monomial<V>, c: C) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial<V>, C)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial<V>, &C)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial<V>) -> Option<&C> {
        self.terms.get(m)
    }

    pub fn leading_term(&self) -> Option<(&Monomial<V>, &C)> {
        self.terms.iter().next_back()
    }

    pub fn as_constant(&self) -> Option<C> {
        match self.terms.len() {
            0 => Some(C::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Monomial<V>, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                e.get_mut().add_assign_ref(&c);
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, scale: &C) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.mul_ref(scale));
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .filter_map(|(m, a)| {
                    let v = a.mul_ref(c);
                    (!v.is_zero()).then(|| (m.clone(), v))
                })
                .collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial<V>, c: &C) -> Self {
        Poly::from_terms(self.terms.iter().map(|(n, a)| (n.mul(m), a.mul_ref(c))))
    }

    /// Maximum total degree, `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn variables(&self) -> Vec<V> {
        let mut vs: Vec<V> = self
            .terms
            .keys()
            .flat_map(|m| m.factors.iter().map(|(v, _)| v.clone()))
            .collect();
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn map_coefficients<D: Ring, F: Fn(&C) -> D>(&self, f: F) -> Poly<V, D> {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    pub fn derivative(&self, v: &V) -> Self {
        Poly::from_terms(self.terms.iter().filter_map(|(m, c)| {
            let e = m.exponent(v);
            if e == 0 {
                return None;
            }
            let rest = Monomial::from_factors(
                m.factors
                    .iter()
                    .map(|(w, f)| (w.clone(), if w == v { f - 1 } else { *f })),
            );
            Some((rest, c.mul_ref(&C::from_int(e as i64))))
        }))
    }

    /// Replaces every variable `v` by `image(v)`; powers are computed once per variable.
    pub fn substitute<W, F>(&self, mut image: F) -> Poly<W, C>
    where
        W: Ord + Clone,
        F: FnMut(&V) -> Poly<W, C>,
    {
        let mut images: BTreeMap<V, Vec<Poly<W, C>>> = BTreeMap::new();
        let mut out = Poly::<W, C>::zero();
        for (m, c) in &self.terms {
            let mut acc = Poly::<W, C>::constant(c.clone());
            for (v, e) in &m.factors {
                let powers = images
                    .entry(v.clone())
                    .or_insert_with(|| vec![Poly::constant(C::one()), image(v)]);
                while powers.len() <= *e as usize {
                    let next = powers.last().unwrap() * &powers[1];
                    powers.push(next);
                }
                acc = &acc * &powers[*e as usize];
                if acc.is_zero() {
                    break;
                }
            }
            out = out + acc;
        }
        out
    }

    /// Same polynomial with variables renamed; `rename` must be injective on the support
    /// or terms are merged.
    pub fn rename<W: Ord + Clone, F: Fn(&V) -> W>(&self, rename: F) -> Poly<W, C> {
        Poly::from_terms(self.terms.iter().map(|(m, c)| {
            (
                Monomial::from_factors(m.factors.iter().map(|(v, e)| (rename(v), *e))),
                c.clone(),
            )
        }))
    }
}

impl<V: Ord + Clone, C: ExactDiv> Poly<V, C> {
    /// Multivariate division by leading terms; `None` unless the division is exact.
    pub fn div_exact_poly(&self, divisor: &Self) -> Option<Self> {
        let (lm, lc) = divisor.leading_term()?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((m, c)) = rem.leading_term() {
            let qm = m.div(&lm)?;
            let qc = c.div_exact(&lc)?;
            rem = rem - divisor.mul_term(&qm, &qc);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }
}

impl<V, C> Ring for Poly<V, C>
where
    V: Ord + Clone + fmt::Debug + Send + Sync,
    C: Ring,
{
    fn zero() -> Self {
        Poly::zero()
    }

    fn one() -> Self {
        Poly::constant(C::one())
    }

    fn from_int(n: i64) -> Self {
        Poly::constant(C::from_int(n))
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }

    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }

    fn neg_ref(&self) -> Self {
        -self
    }

    fn add_assign_ref(&mut self, other: &Self) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl<V, C> ExactDiv for Poly<V, C>
where
    V: Ord + Clone + fmt::Debug + Send + Sync,
    C: ExactDiv,
{
    fn div_exact(&self, divisor: &Self) -> Option<Self> {
        self.div_exact_poly(divisor)
    }
}

impl<'a, V: Ord + Clone, C: Ring> Add<&'a Poly<V, C>> for &'a Poly<V, C> {
    type Output = Poly<V, C>;
    fn add(self, rhs: &Poly<V, C>) -> Poly<V, C> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<V: Ord + Clone, C: Ring> Add for Poly<V, C> {
    type Output = Poly<V, C>;
    fn add(mut self, rhs: Poly<V, C>) -> Poly<V, C> {
        if self.terms.len() < rhs.terms.len() {
            return rhs + self;
        }
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl<'a, V: Ord + Clone, C: Ring> Sub<&'a Poly<V, C>> for &'a Poly<V, C> {
    type Output = Poly<V, C>;
    fn sub(self, rhs: &Poly<V, C>) -> Poly<V, C> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.neg_ref());
        }
        out
    }
}

impl<V: Ord + Clone, C: Ring> Sub for Poly<V, C> {
    type Output = Poly<V, C>;
    fn sub(mut self, rhs: Poly<V, C>) -> Poly<V, C> {
        for (m, c) in rhs.terms {
            self.add_term(m, c.neg_ref());
        }
        self
    }
}

impl<'a, V: Ord + Clone, C: Ring> Mul<&'a Poly<V, C>> for &'a Poly<V, C> {
    type Output = Poly<V, C>;
    fn mul(self, rhs: &Poly<V, C>) -> Poly<V, C> {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            for (n, d) in &rhs.terms {
                out.add_term(m.mul(n), c.mul_ref(d));
            }
        }
        out
    }
}

impl<V: Ord + Clone, C: Ring> Mul for Poly<V, C> {
    type Output = Poly<V, C>;
    fn mul(self, rhs: Poly<V, C>) -> Poly<V, C> {
        &self * &rhs
    }
}

impl<V: Ord + Clone, C: Ring> Neg for &Poly<V, C> {
    type Output = Poly<V, C>;
    fn neg(self) -> Poly<V, C> {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg_ref()))
                .collect(),
        }
    }
}

impl<V: Ord + Clone, C: Ring> Neg for Poly<V, C> {
    type Output = Poly<V, C>;
    fn neg(self) -> Poly<V, C> {
        -&self
    }
}

impl<V: Ord + fmt::Debug, C: fmt::Debug> fmt::Debug for Poly<V, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter().rev()).finish()
    }
}

impl<V: Ord + Clone + fmt::Display> fmt::Display for Poly<V, super::Rational> {
    /// Terms in decreasing monomial order, e.g. `3/2*mu0^2*T - 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = super::rational::is_negative(c);
            let abs = if neg { -c } else { c.clone() };
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut parts: Vec<String> = Vec::new();
            if !Ring::is_one(&abs) || m.is_one() {
                parts.push(abs.to_string());
            }
            for (v, e) in &m.factors {
                if *e == 1 {
                    parts.push(v.to_string());
                } else {
                    parts.push(format!("{v}^{e}"));
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::super::{int, rat, Rational};
    use super::*;

    type P = Poly<usize, Rational>;

    fn x(i: usize) -> P {
        P::var(i)
    }

    #[test]
    fn monomial_order_is_lex_by_largest_variable() {
        let a = Monomial::from_factors([(2usize, 1)]);
        let b = Monomial::from_factors([(1usize, 5), (0, 3)]);
        assert!(a > b);
        let c = Monomial::from_factors([(2usize, 1), (0, 1)]);
        assert!(c > a);
        assert!(Monomial::from_factors([(2usize, 2)]) > c);
    }

    #[test]
    fn arithmetic_and_cancellation() {
        let p = &(&x(0) + &x(1)) * &(&x(0) - &x(1));
        let q = &(&x(0) * &x(0)) - &(&x(1) * &x(1));
        assert_eq!(p, q);
        assert!((&p - &q).is_zero());
    }

    #[test]
    fn substitution_and_derivative() {
        // (x0 + 2)^3 evaluated via substitution x0 -> x1 + 1
        let p = (&x(0) + &P::constant(int(2))).pow(3);
        let s = p.substitute(|_| &x(1) + &P::constant(int(1)));
        assert_eq!(s, (&x(1) + &P::constant(int(3))).pow(3));
        let d = p.derivative(&0);
        assert_eq!(d, (&x(0) + &P::constant(int(2))).pow(2).scale(&int(3)));
    }

    #[test]
    fn exact_division() {
        let a = &x(0) + &x(1);
        let b = &x(0) - &x(2).scale(&rat(1, 2));
        let prod = &a * &b;
        assert_eq!(prod.div_exact_poly(&a), Some(b.clone()));
        assert_eq!((&prod + &x(2)).div_exact_poly(&a), None);
    }

    #[test]
    fn display_is_signed_and_ordered() {
        let p = &(&x(0) * &x(0)).scale(&rat(3, 2)) - &P::constant(int(1));
        assert_eq!(p.to_string(), "3/2*0^2 - 1");
    }
}
