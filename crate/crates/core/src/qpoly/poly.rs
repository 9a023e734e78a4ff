//! Sparse multivariate polynomials graded by rational weight vectors.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::Zero;

use super::coefficient::{Coefficient, Field};
use super::PolyError;

/// Exact rational used for weights, degrees and discrepancies.
pub type Rat = Ratio<i64>;

/// Ordered list of variable names.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    names: Vec<String>,
}

impl Ring {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Arc<Ring> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            assert!(!names[..i].contains(n), "duplicate variable name {n}");
        }
        Arc::new(Ring { names })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn idx(&self, name: &str) -> usize {
        self.index(name).unwrap_or_else(|| panic!("unknown variable {name}"))
    }

    /// The ring with `extra` variables appended.
    pub fn extended<S: AsRef<str>>(&self, extra: &[S]) -> Arc<Ring> {
        let mut names = self.names.clone();
        names.extend(extra.iter().map(|s| s.as_ref().to_string()));
        Ring::new(&names)
    }
}

/// Exponent vector, one slot per ring variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.divides(self) {
            Some(Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
        } else {
            None
        }
    }

    /// Graded reverse lexicographic comparison; `Greater` means "comes first".
    pub fn grevlex_cmp(&self, other: &Monomial) -> Ordering {
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        for (a, b) in self.0.iter().zip(&other.0).rev() {
            match a.cmp(b) {
                Ordering::Equal => continue,
                o => return o.reverse(),
            }
        }
        Ordering::Equal
    }
}

/// Rational weights stored as integer numerators over a common denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightVector {
    numerators: Vec<i64>,
    denominator: i64,
}

impl WeightVector {
    pub fn new(numerators: Vec<i64>, denominator: i64) -> Self {
        assert!(denominator >= 1, "weight denominator must be positive");
        WeightVector { numerators, denominator }
    }

    pub fn integral(weights: Vec<i64>) -> Self {
        Self::new(weights, 1)
    }

    pub fn numerators(&self) -> &[i64] {
        &self.numerators
    }

    pub fn denominator(&self) -> i64 {
        self.denominator
    }

    pub fn len(&self) -> usize {
        self.numerators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.numerators.is_empty()
    }

    pub fn weight(&self, i: usize) -> Rat {
        Rat::new(self.numerators[i], self.denominator)
    }

    /// Weight scaled by the denominator (an integer).
    pub fn scaled_weight_of(&self, m: &Monomial) -> i64 {
        self.numerators.iter().zip(m.exponents()).map(|(w, e)| w * *e as i64).sum()
    }

    pub fn weight_of(&self, m: &Monomial) -> Result<Rat, PolyError> {
        if m.exponents().len() != self.len() {
            return Err(PolyError::LengthMismatch { expected: self.len(), found: m.exponents().len() });
        }
        Ok(Rat::new(self.scaled_weight_of(m), self.denominator))
    }
}

/// A polynomial with exact coefficients in a fixed ring.
///
/// Terms are stored in a map keyed by monomial; zero coefficients are never
/// stored. All coefficients live in `field`.
#[derive(Clone, Debug)]
pub struct QPoly {
    ring: Arc<Ring>,
    field: Field,
    terms: BTreeMap<Monomial, Coefficient>,
}

impl QPoly {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        QPoly { ring: ring.clone(), field: Field::Rational, terms: BTreeMap::new() }
    }

    pub fn constant(ring: &Arc<Ring>, c: Coefficient) -> Self {
        let mut p = Self::zero(ring);
        p.field = c.field();
        if !c.is_zero() {
            p.terms.insert(Monomial::one(ring.len()), c);
        }
        p
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::constant(ring, Coefficient::from_i64(1))
    }

    pub fn var(ring: &Arc<Ring>, name: &str) -> Self {
        Self::monomial(ring, Monomial::var(ring.len(), ring.idx(name)), Coefficient::from_i64(1))
    }

    pub fn monomial(ring: &Arc<Ring>, m: Monomial, c: Coefficient) -> Self {
        assert_eq!(m.exponents().len(), ring.len());
        let mut p = Self::zero(ring);
        p.field = c.field();
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Coefficient)>>(ring: &Arc<Ring>, terms: I) -> Self {
        let mut p = Self::zero(ring);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn field(&self) -> Field {
        self.field
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

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coefficient)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Coefficient {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// `x^J ∈ f`: the coefficient of `m` is nonzero.
    pub fn contains_monomial(&self, m: &Monomial) -> bool {
        self.terms.contains_key(m)
    }

    /// Parses `text` as a single monomial in this ring and tests membership.
    pub fn contains(&self, text: &str) -> bool {
        let m = super::parse::parse_monomial(text, &self.ring).expect("monomial text");
        self.contains_monomial(&m)
    }

    pub fn coefficient_of(&self, text: &str) -> Coefficient {
        let m = super::parse::parse_monomial(text, &self.ring).expect("monomial text");
        self.coefficient(&m)
    }

    /// Moves every coefficient into `field` (joined with the current one).
    pub fn into_field(mut self, field: Field) -> Self {
        let f = self.field.join(field);
        if f != self.field {
            self.field = f;
            let terms = std::mem::take(&mut self.terms);
            for (m, c) in terms {
                self.add_term(m, c);
            }
        }
        self
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Coefficient) {
        debug_assert_eq!(m.exponents().len(), self.ring.len());
        if c.field() != self.field {
            let f = self.field.join(c.field());
            if f != self.field {
                let me = std::mem::replace(self, QPoly::zero(&self.ring.clone()));
                *self = me.into_field(f);
            }
        }
        let c = c.into_field(self.field);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let s = &*existing + &c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn check_ring(&self, other: &QPoly) {
        assert!(
            Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring,
            "polynomials live in different rings: {:?} vs {:?}",
            self.ring.names(),
            other.ring.names()
        );
    }

    pub fn scale(&self, c: &Coefficient) -> QPoly {
        let mut out = QPoly::zero(&self.ring);
        out.field = self.field.join(c.field());
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a * c);
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Coefficient) -> QPoly {
        let mut out = QPoly::zero(&self.ring);
        out.field = self.field.join(c.field());
        for (n, a) in &self.terms {
            out.add_term(n.mul(m), a * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> QPoly {
        let mut acc = QPoly::one(&self.ring).into_field(self.field);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.total_degree() == 0)
    }

    pub fn constant_term(&self) -> Coefficient {
        self.coefficient(&Monomial::one(self.ring.len()))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    /// Lowest exponent of `var` over all terms (0 for the zero polynomial).
    pub fn order_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).min().unwrap_or(0)
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.0[var] > 0)
    }

    /// Indices of variables that occur.
    pub fn variables(&self) -> Vec<usize> {
        (0..self.ring.len()).filter(|&i| self.involves(i)).collect()
    }

    /// Coefficients of `f` viewed as a polynomial in `var`: entry `k` is the
    /// coefficient of `var^k`, itself free of `var`.
    pub fn coefficients_in(&self, var: usize) -> Vec<QPoly> {
        let d = self.degree_in(var) as usize;
        let mut out = vec![QPoly::zero(&self.ring).into_field(self.field); d + 1];
        for (m, c) in &self.terms {
            let k = m.0[var] as usize;
            let mut m2 = m.clone();
            m2.0[var] = 0;
            out[k].add_term(m2, c.clone());
        }
        out
    }

    /// Sum of the terms of `f` of `w`-weight exactly `d` (the `f_{w=d}` part).
    pub fn w_component(&self, w: &WeightVector, d: Rat) -> QPoly {
        let mut out = QPoly::zero(&self.ring).into_field(self.field);
        for (m, c) in &self.terms {
            if Rat::new(w.scaled_weight_of(m), w.denominator()) == d {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    /// All `w`-components, keyed by weight in increasing order.
    pub fn w_components(&self, w: &WeightVector) -> BTreeMap<Rat, QPoly> {
        let mut out: BTreeMap<Rat, QPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let d = Rat::new(w.scaled_weight_of(m), w.denominator());
            out.entry(d)
                .or_insert_with(|| QPoly::zero(&self.ring).into_field(self.field))
                .add_term(m.clone(), c.clone());
        }
        out
    }

    /// Minimal `w`-weight of a term (the `w`-order). `None` for zero.
    pub fn w_order(&self, w: &WeightVector) -> Option<Rat> {
        self.terms.keys().map(|m| Rat::new(w.scaled_weight_of(m), w.denominator())).min()
    }

    pub fn w_degree(&self, w: &WeightVector) -> Option<Rat> {
        self.terms.keys().map(|m| Rat::new(w.scaled_weight_of(m), w.denominator())).max()
    }

    /// Lowest nonzero `w`-component.
    pub fn w_initial(&self, w: &WeightVector) -> QPoly {
        match self.w_order(w) {
            Some(d) => self.w_component(w, d),
            None => self.clone(),
        }
    }

    /// `Some(d)` if every term has `w`-weight `d`.
    pub fn quasi_homogeneous_degree(&self, w: &WeightVector) -> Result<Option<Rat>, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        if w.len() != self.ring.len() {
            return Err(PolyError::LengthMismatch { expected: self.ring.len(), found: w.len() });
        }
        let lo = self.w_order(w).unwrap();
        let hi = self.w_degree(w).unwrap();
        Ok(if lo == hi { Some(lo) } else { None })
    }

    pub fn is_quasi_homogeneous(&self, w: &WeightVector, d: Rat) -> bool {
        self.terms.keys().all(|m| Rat::new(w.scaled_weight_of(m), w.denominator()) == d)
    }

    pub fn derivative(&self, var: usize) -> QPoly {
        let mut out = QPoly::zero(&self.ring).into_field(self.field);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e > 0 {
                let mut m2 = m.clone();
                m2.0[var] -= 1;
                out.add_term(m2, c * &Coefficient::from_i64(e as i64));
            }
        }
        out
    }

    /// Exact evaluation at a point.
    pub fn evaluate(&self, point: &[Coefficient]) -> Result<Coefficient, PolyError> {
        if point.len() != self.ring.len() {
            return Err(PolyError::LengthMismatch { expected: self.ring.len(), found: point.len() });
        }
        let field = point.iter().fold(self.field, |f, c| f.join(c.field()));
        let mut acc = field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone().into_field(field);
            for (x, e) in point.iter().zip(m.exponents()) {
                if *e > 0 {
                    t = &t * &x.pow(*e as u64);
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Sets the listed variables to constants, keeping the same ring.
    pub fn partial_evaluate(&self, values: &[(usize, Coefficient)]) -> QPoly {
        let field = values.iter().fold(self.field, |f, (_, c)| f.join(c.field()));
        let mut out = QPoly::zero(&self.ring).into_field(field);
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            let mut t = c.clone().into_field(field);
            for (i, v) in values {
                let e = m2.0[*i];
                if e > 0 {
                    t = &t * &v.pow(e as u64);
                    m2.0[*i] = 0;
                }
            }
            out.add_term(m2, t);
        }
        out
    }

    /// Shorthand: set variables (by name) to integers.
    pub fn set(&self, assignments: &[(&str, i64)]) -> QPoly {
        let values: Vec<(usize, Coefficient)> =
            assignments.iter().map(|(n, v)| (self.ring.idx(n), Coefficient::from_i64(*v))).collect();
        self.partial_evaluate(&values)
    }

    /// Re-expresses the polynomial in `target`, mapping variables by name.
    /// Fails if a variable that occurs is missing from `target`.
    pub fn embed(&self, target: &Arc<Ring>) -> Result<QPoly, PolyError> {
        let map: Vec<Option<usize>> = self.ring.names().iter().map(|n| target.index(n)).collect();
        let mut out = QPoly::zero(target).into_field(self.field);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; target.len()];
            for (i, &k) in m.exponents().iter().enumerate() {
                if k == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => e[j] += k,
                    None => return Err(PolyError::UnknownVariable(self.ring.names()[i].clone())),
                }
            }
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Renames variables into `target` via an explicit name map.
    pub fn rename(&self, target: &Arc<Ring>, pairs: &[(&str, &str)]) -> Result<QPoly, PolyError> {
        let mut out = QPoly::zero(target).into_field(self.field);
        let map: Vec<usize> = self
            .ring
            .names()
            .iter()
            .map(|n| {
                let to = pairs.iter().find(|(a, _)| a == n).map(|(_, b)| *b).unwrap_or(n.as_str());
                target.index(to).ok_or_else(|| PolyError::UnknownVariable(to.to_string()))
            })
            .collect::<Result<_, _>>()?;
        for (m, c) in &self.terms {
            let mut e = vec![0u32; target.len()];
            for (i, &k) in m.exponents().iter().enumerate() {
                e[map[i]] += k;
            }
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Leading term in lexicographic order of the exponent vectors.
    pub fn lex_leading(&self) -> Option<(&Monomial, &Coefficient)> {
        self.terms.iter().next_back()
    }

    /// Multivariate division by a single divisor (lex order); returns
    /// `(quotient, remainder)` with `self = q * g + r`.
    pub fn div_rem(&self, g: &QPoly) -> Result<(QPoly, QPoly), PolyError> {
        self.check_ring(g);
        let (lm, lc) = g.lex_leading().ok_or(PolyError::ZeroPolynomial)?;
        let lm = lm.clone();
        let lc_inv = lc.inv();
        let field = self.field.join(g.field);
        let mut q = QPoly::zero(&self.ring).into_field(field);
        let mut r = QPoly::zero(&self.ring).into_field(field);
        let mut p = self.clone().into_field(field);
        while let Some((m, c)) = p.lex_leading().map(|(m, c)| (m.clone(), c.clone())) {
            match m.div(&lm) {
                Some(qm) => {
                    let qc = &c * &lc_inv;
                    p = &p - &g.mul_monomial(&qm, &qc);
                    q.add_term(qm, qc);
                }
                None => {
                    p.terms.remove(&m);
                    r.add_term(m, c);
                }
            }
        }
        Ok((q, r))
    }

    /// Exact quotient `self / g`, or `None` if `g` does not divide `self`.
    pub fn exact_div(&self, g: &QPoly) -> Option<QPoly> {
        let (q, r) = self.div_rem(g).ok()?;
        r.is_zero().then_some(q)
    }

    /// Every term lies in the ideal generated by the listed variables, raised
    /// to the power `k` (total degree in those variables at least `k`).
    pub fn in_power_of_variable_ideal(&self, vars: &[usize], k: u32) -> bool {
        self.terms.keys().all(|m| vars.iter().map(|&i| m.0[i]).sum::<u32>() >= k)
    }

    /// Makes the lex-leading coefficient one.
    pub fn monic(&self) -> QPoly {
        match self.lex_leading() {
            Some((_, c)) => self.scale(&c.inv()),
            None => self.clone(),
        }
    }

    /// Terms in canonical graded-reverse-lexicographic order (largest first).
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &Coefficient)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| b.0.grevlex_cmp(a.0));
        v
    }
}

impl PartialEq for QPoly {
    fn eq(&self, other: &QPoly) -> bool {
        if self.ring.names() != other.ring.names() {
            return false;
        }
        let f = self.field.join(other.field);
        if f == self.field && f == other.field {
            self.terms == other.terms
        } else {
            self.clone().into_field(f).terms == other.clone().into_field(f).terms
        }
    }
}

impl Eq for QPoly {}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mono: Vec<String> = m
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, e)| **e > 0)
                .map(|(j, e)| {
                    let n = &self.ring.names()[j];
                    if *e == 1 {
                        n.clone()
                    } else {
                        format!("{n}^{e}")
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{abs}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        self.check_ring(rhs);
        let mut out = self.clone().into_field(rhs.field);
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        self.check_ring(rhs);
        let mut out = self.clone().into_field(rhs.field);
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        self.check_ring(rhs);
        let mut out = QPoly::zero(&self.ring).into_field(self.field.join(rhs.field));
        for (m, a) in &self.terms {
            for (n, b) in &rhs.terms {
                out.add_term(m.mul(n), a * b);
            }
        }
        out
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -&*c;
        }
        out
    }
}

macro_rules! forward_owned_poly {
    ($tr:ident, $m:ident) => {
        impl $tr for QPoly {
            type Output = QPoly;
            fn $m(self, rhs: QPoly) -> QPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&QPoly> for QPoly {
            type Output = QPoly;
            fn $m(self, rhs: &QPoly) -> QPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned_poly!(Add, add);
forward_owned_poly!(Sub, sub);
forward_owned_poly!(Mul, mul);

impl Neg for QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        -&self
    }
}

/// gcd of a list of non-negative integers (0 for an empty list).
pub fn gcd_all(values: impl IntoIterator<Item = i64>) -> i64 {
    values.into_iter().fold(0i64, |g, v| g.gcd(&v))
}

pub fn rat_to_string(r: &Rat) -> String {
    if r.denom() == &1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat_is_integer(r: &Rat) -> bool {
    (r - r.floor()).is_zero()
}
