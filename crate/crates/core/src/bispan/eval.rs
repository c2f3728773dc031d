//! Evaluation of bispans in the fixed-point functor of a G-ring.
//!
//! For `R` with a G-action, `X ↦ Map_G(X, R)` is a Tambara functor and a
//! bispan `[X ←d A →b B →c Y]` acts by
//! `φ ↦ (y ↦ Σ_{β∈c⁻¹(y)} Π_{a∈b⁻¹(β)} φ(d(a)))`.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::gset::GSet;
use crate::ring::GRing;

use super::{Bispan, VirtualBispan};

fn check_equivariant<R: GRing>(ring: &R, x: &GSet, phi: &[R::Elem]) -> Result<()> {
    if phi.len() != x.size() {
        return Err(Error::NotEquivariant(format!("{} values for {} points", phi.len(), x.size())));
    }
    for g in x.group().elements() {
        for (p, v) in phi.iter().enumerate() {
            if ring.act(g, v) != phi[x.act(g, p)] {
                return Err(Error::NotEquivariant(format!("assignment fails at g={g}, x={p}")));
            }
        }
    }
    Ok(())
}

fn accumulate<R: GRing>(ring: &R, s: &Bispan, phi: &[R::Elem], coeff: &BigInt, out: &mut [R::Elem]) {
    let fibers = s.b().fibers();
    for (beta, fib) in fibers.iter().enumerate() {
        let mut prod = ring.one();
        for &a in fib {
            prod = ring.mul(&prod, &phi[s.d().apply(a)]);
        }
        let y = s.c().apply(beta);
        let term = if coeff.is_one() { prod } else { ring.scale_int(coeff, &prod) };
        out[y] = ring.add(&out[y], &term);
    }
}

/// Evaluates a representative on an equivariant assignment `X → R`.
pub fn evaluate_bispan<R: GRing>(s: &Bispan, ring: &R, phi: &[R::Elem]) -> Result<Vec<R::Elem>> {
    check_equivariant(ring, s.source(), phi)?;
    let mut out = vec![ring.zero(); s.target().size()];
    accumulate(ring, s, phi, &BigInt::one(), &mut out);
    Ok(out)
}

/// Evaluates `u ∈ U^G(X, Y)` on an equivariant assignment `X → R`,
/// extending linearly over the coefficients.
pub fn evaluate<R: GRing>(u: &VirtualBispan, ring: &R, phi: &[R::Elem]) -> Result<Vec<R::Elem>> {
    check_equivariant(ring, u.source(), phi)?;
    let mut out = vec![ring.zero(); u.target().size()];
    for (k, c) in u.terms() {
        accumulate(ring, &u.realize(k)?, phi, c, &mut out);
    }
    Ok(out)
}
