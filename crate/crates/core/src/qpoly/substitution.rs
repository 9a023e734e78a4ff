//! Ring homomorphisms between polynomial rings and the toric transform.

use std::sync::Arc;

use super::coefficient::Coefficient;
use super::poly::{Monomial, QPoly, Rat, Ring, WeightVector};
use super::PolyError;

/// Images of the source variables, all in one target ring.
#[derive(Clone, Debug)]
pub struct Substitution {
    source: Arc<Ring>,
    target: Arc<Ring>,
    images: Vec<QPoly>,
}

impl Substitution {
    /// The identity on `ring`.
    pub fn identity(ring: &Arc<Ring>) -> Self {
        let images = ring.names().iter().map(|n| QPoly::var(ring, n)).collect();
        Substitution { source: ring.clone(), target: ring.clone(), images }
    }

    /// Identity everywhere except the listed variables (same ring).
    pub fn with(ring: &Arc<Ring>, changes: &[(&str, QPoly)]) -> Self {
        let mut s = Self::identity(ring);
        for (n, img) in changes {
            s.images[ring.idx(n)] = img.clone();
        }
        s
    }

    /// Images written as text in the target ring; variables not listed map to
    /// the same-named target variable.
    pub fn parse(source: &Arc<Ring>, target: &Arc<Ring>, changes: &[(&str, &str)]) -> Result<Self, PolyError> {
        let mut images = Vec::with_capacity(source.len());
        for n in source.names() {
            let img = match changes.iter().find(|(a, _)| a == n) {
                Some((_, text)) => super::parse::parse(text, target)?,
                None => match target.index(n) {
                    Some(_) => QPoly::var(target, n),
                    None => return Err(PolyError::UnknownVariable(n.clone())),
                },
            };
            images.push(img);
        }
        Ok(Substitution { source: source.clone(), target: target.clone(), images })
    }

    pub fn from_images(source: &Arc<Ring>, target: &Arc<Ring>, images: Vec<QPoly>) -> Result<Self, PolyError> {
        if images.len() != source.len() {
            return Err(PolyError::LengthMismatch { expected: source.len(), found: images.len() });
        }
        if images.iter().any(|p| p.ring().names() != target.names()) {
            return Err(PolyError::AmbientMismatch);
        }
        Ok(Substitution { source: source.clone(), target: target.clone(), images })
    }

    pub fn source(&self) -> &Arc<Ring> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Ring> {
        &self.target
    }

    pub fn image(&self, var: usize) -> &QPoly {
        &self.images[var]
    }

    pub fn images(&self) -> &[QPoly] {
        &self.images
    }

    /// `self` followed by `next` (x ↦ next(self(x))).
    pub fn then(&self, next: &Substitution) -> Result<Substitution, PolyError> {
        let images = self.images.iter().map(|p| substitute(p, next)).collect::<Result<_, _>>()?;
        Ok(Substitution { source: self.source.clone(), target: next.target.clone(), images })
    }
}

/// Applies a substitution; a ring homomorphism.
pub fn substitute(f: &QPoly, s: &Substitution) -> Result<QPoly, PolyError> {
    if f.ring().names() != s.source.names() {
        return Err(PolyError::AmbientMismatch);
    }
    let n = f.ring().len();
    let mut powers: Vec<Vec<QPoly>> = vec![Vec::new(); n];
    let mut out = QPoly::zero(&s.target).into_field(f.field());
    for (m, c) in f.terms() {
        let mut t = QPoly::constant(&s.target, c.clone());
        for (i, &e) in m.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let cache = &mut powers[i];
            if cache.is_empty() {
                cache.push(QPoly::one(&s.target));
            }
            while cache.len() <= e as usize {
                let next = cache.last().unwrap() * &s.images[i];
                cache.push(next);
            }
            t = &t * &cache[e as usize];
        }
        out = &out + &t;
    }
    Ok(out)
}

/// `u^{-d0} f(x_i u^{w_i})` in the ring extended by `u`, with `d0` the minimal
/// term weight. Every term's weight must lie in `d0 + ℤ`.
pub fn toric_transform(f: &QPoly, w: &WeightVector, u: &str) -> Result<QPoly, PolyError> {
    let ring = f.ring();
    if w.len() != ring.len() {
        return Err(PolyError::LengthMismatch { expected: ring.len(), found: w.len() });
    }
    let d0 = f.w_order(w).ok_or(PolyError::ZeroPolynomial)?;
    let target = ring.extended(&[u]);
    let mut out = QPoly::zero(&target).into_field(f.field());
    for (m, c) in f.terms() {
        let d = w.weight_of(m)? - d0;
        if !d.is_integer() {
            return Err(PolyError::NonIntegralExponent(super::poly::rat_to_string(&d)));
        }
        let mut e = m.exponents().to_vec();
        e.push(d.to_integer() as u32);
        out.add_term(Monomial(e), c.clone());
    }
    Ok(out)
}

/// The lowest weight of `f`, used as the shift in [`toric_transform`].
pub fn toric_shift(f: &QPoly, w: &WeightVector) -> Option<Rat> {
    f.w_order(w)
}

/// Sets `u = value` in a polynomial whose last variable is `u`, and drops it.
pub fn specialize_last(f: &QPoly, value: i64, base: &Arc<Ring>) -> QPoly {
    let k = f.ring().len() - 1;
    let g = f.partial_evaluate(&[(k, Coefficient::from_i64(value))]);
    g.embed(base).expect("last variable removed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::parse::parse;

    #[test]
    fn square_shift() {
        let r = Ring::new(&["y", "z", "v", "l"]);
        let f = parse("v^2", &r).unwrap();
        let s = Substitution::parse(&r, &r, &[("v", "-v - l*y*z^2")]).unwrap();
        let g = substitute(&f, &s).unwrap();
        assert_eq!(g, parse("v^2 + 2*l*y*z^2*v + l^2*y^2*z^4", &r).unwrap());
    }

    #[test]
    fn swap_is_symmetric() {
        let r = Ring::new(&["x", "y"]);
        let s = Substitution::parse(&r, &r, &[("x", "y"), ("y", "x")]).unwrap();
        let f = parse("x + y", &r).unwrap();
        assert_eq!(substitute(&f, &s).unwrap(), f);
    }

    #[test]
    fn transform_laws() {
        let r = Ring::new(&["x", "y"]);
        let f = parse("x^2 + x*y + y^2", &r).unwrap();
        let w = WeightVector::integral(vec![1, 0]);
        let g = toric_transform(&f, &w, "u").unwrap();
        assert_eq!(g.ring().names().last().unwrap(), "u");
        assert_eq!(specialize_last(&g, 1, &r), f);
        assert_eq!(specialize_last(&g, 0, &r), parse("y^2", &r).unwrap());
        let bad = WeightVector::new(vec![1, 0], 2);
        assert!(matches!(toric_transform(&f, &bad, "u"), Err(PolyError::NonIntegralExponent(_))));
    }
}
