use crate::algebra::linalg::EchelonBasis;
use crate::algebra::{flatten, unflatten, Linear, Matrix, ZMod};
use crate::error::{Error, Result};
use crate::holomorph::{Endomorphism, Platform};
use crate::platforms::{ConjugationPlatform, DhPlatform, MakePlatform};
use crate::protocol::{unmask, Ciphertext, InvertiblePlatform, Transcript};

use super::{AttackOutcome, WorkCounters};

/// A platform whose carrier is a finite-dimensional `Z_p`-space on which `φ`
/// acts linearly and `∘` is either bilinear (multiplication) or addition.
pub trait LinearPlatform: Platform {
    fn field_modulus(&self) -> u64;
    fn flatten_elem(&self, e: &Self::Elem) -> Vec<u64>;
    fn unflatten_elem(&self, coords: &[u64]) -> Self::Elem;
    /// Whether `∘` is addition rather than multiplication.
    fn additive(&self) -> bool;
}

impl<S: Linear> LinearPlatform for ConjugationPlatform<S> {
    fn field_modulus(&self) -> u64 {
        S::modulus(&self.scalar_params())
    }

    fn flatten_elem(&self, e: &Matrix<S>) -> Vec<u64> {
        flatten(e)
    }

    fn unflatten_elem(&self, coords: &[u64]) -> Matrix<S> {
        unflatten(&self.scalar_params(), self.size(), self.size(), coords)
    }

    fn additive(&self) -> bool {
        false
    }
}

impl LinearPlatform for MakePlatform {
    fn field_modulus(&self) -> u64 {
        self.modulus()
    }

    fn flatten_elem(&self, e: &Matrix<ZMod>) -> Vec<u64> {
        flatten(e)
    }

    fn unflatten_elem(&self, coords: &[u64]) -> Matrix<ZMod> {
        unflatten(&self.modulus(), self.size(), self.size(), coords)
    }

    fn additive(&self) -> bool {
        true
    }
}

impl LinearPlatform for DhPlatform {
    fn field_modulus(&self) -> u64 {
        self.generator().params()
    }

    fn flatten_elem(&self, e: &Matrix<ZMod>) -> Vec<u64> {
        flatten(e)
    }

    fn unflatten_elem(&self, coords: &[u64]) -> Matrix<ZMod> {
        let n = self.generator().rows();
        unflatten(&self.field_modulus(), n, n, coords)
    }

    fn additive(&self) -> bool {
        false
    }
}

/// The maximal independent prefix `a_1, …, a_k` of the power sequence.
#[derive(Clone, Debug)]
pub struct SpanBasis<E> {
    pub indices: Vec<u64>,
    pub vectors: Vec<Vec<u64>>,
    pub elements: Vec<E>,
    pub echelon: EchelonBasis,
}

impl<E: Clone> SpanBasis<E> {
    /// Generates `a_1, a_2, …` until the first term already in the span of
    /// its predecessors. From then on every later term stays in that span.
    pub fn build<P: LinearPlatform<Elem = E> + ?Sized>(p: &P) -> Result<Self> {
        let dim = p.flatten_elem(p.generator()).len();
        let mut basis = SpanBasis {
            indices: Vec::new(),
            vectors: Vec::new(),
            elements: Vec::new(),
            echelon: EchelonBasis::new(dim, p.field_modulus())?,
        };
        let mut a = p.generator().clone();
        for i in 1.. {
            let v = p.flatten_elem(&a);
            if !basis.echelon.insert(&v) {
                break;
            }
            basis.indices.push(i);
            basis.vectors.push(v);
            let next = p.op(&p.phi().apply(&a), p.generator());
            basis.elements.push(std::mem::replace(&mut a, next));
        }
        Ok(basis)
    }

    pub fn rank(&self) -> usize {
        self.indices.len()
    }

    /// Coefficients `η` with `flatten(e) = Σ η_i flatten(a_i)`.
    pub fn express<P: LinearPlatform<Elem = E> + ?Sized>(&self, p: &P, e: &E) -> Option<Vec<u64>> {
        self.echelon.express(&p.flatten_elem(e))
    }
}

/// Recovers `K = a_{x+y}` from `A = a_x` and `B = a_y`.
///
/// `a_n ↦ a_{n+y} = φ^y(a_n) ∘ B` is linear in `a_n` (affine when `∘` is
/// addition), so writing `A = Σ η_i a_i` gives
/// `K = Σ η_i a_{i+y} = Σ η_i (φ^i(B) ∘ a_i)`, minus the `(Σ η_i − 1)·B`
/// surplus in the additive case.
pub fn dimension_attack<P: LinearPlatform + ?Sized>(p: &P, t: &Transcript<P::Elem>) -> Result<AttackOutcome<P::Elem>> {
    let basis = SpanBasis::build(p)?;
    let mut work = WorkCounters {
        sequence_terms_generated: basis.rank() as u64 + 1,
        rank: basis.rank() as u64,
        linear_solves: 1,
        ..Default::default()
    };
    let Some(eta) = basis.express(p, &t.a) else {
        return Ok(AttackOutcome::failed("A is not in the span of the power sequence", work));
    };
    let q = p.field_modulus();
    let dim = basis.echelon.dimension();
    let mut acc = vec![0u64; dim];
    let mut phi_b = t.b.clone();
    for (a_i, &e) in basis.elements.iter().zip(&eta) {
        phi_b = p.phi().apply(&phi_b);
        if e != 0 {
            let term = p.flatten_elem(&p.op(&phi_b, a_i));
            axpy(&mut acc, e, &term, q);
        }
    }
    if p.additive() {
        let total = eta.iter().fold(0u64, |s, &e| ((s as u128 + e as u128) % q as u128) as u64);
        let surplus = (total + q - 1) % q;
        axpy(&mut acc, q - surplus, &p.flatten_elem(&t.b), q);
    }
    work.sequence_terms_generated += basis.rank() as u64;
    let key = p.unflatten_elem(&acc);
    Ok(AttackOutcome::recovered(key, t.key.as_ref(), work))
}

fn axpy(acc: &mut [u64], c: u64, v: &[u64], q: u64) {
    for (a, &x) in acc.iter_mut().zip(v) {
        *a = ((*a as u128 + c as u128 * x as u128) % q as u128) as u64;
    }
}

/// Reads the public key `a` and `c1` as a key-exchange transcript, recovers
/// `K = φ^n(c1) ∘ a` with the dimension attack and unmasks `c2`.
pub fn mr_message_recovery<P: LinearPlatform + InvertiblePlatform + ?Sized>(
    p: &P,
    public: &P::Elem,
    ct: &Ciphertext<P::Elem>,
) -> Result<P::Elem> {
    let t = Transcript { a: public.clone(), b: ct.c1.clone(), key: None };
    let outcome = dimension_attack(p, &t)?;
    let key = outcome
        .recovered_key
        .ok_or_else(|| Error::Internal(outcome.failure.unwrap_or_else(|| "dimension attack failed".into())))?;
    unmask(p, &key, &ct.c2)
}
