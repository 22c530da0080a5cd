//! Exponentiation in the holomorph `G ⋊ End(G)`.
//!
//! A platform supplies a semigroup operation `∘`, a public element `g` and an
//! endomorphism `φ`. Powers of `(g, φ)` multiply as
//! `(a, φ^m)(b, φ^k) = (φ^k(a) ∘ b, φ^{m+k})`, so the first coordinate of
//! `(g, φ)^n` satisfies `a_{m+k} = φ^k(a_m) ∘ a_k` with `a_1 = g`. Exponents
//! start at 1 throughout; several platforms are semigroups without identity.

use std::fmt::Debug;

use rand::RngCore;

use crate::algebra::{perm_apply_matrix, BitString, Matrix, Permutation, Semiring, Tropical};
use crate::error::{Error, Result};

pub trait Endomorphism<E>: Clone + PartialEq + Debug + Send + Sync {
    fn apply(&self, x: &E) -> E;

    /// `self ∘ other`: apply `other` first.
    fn compose(&self, other: &Self) -> Self;
}

pub trait Platform: Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;
    type Endo: Endomorphism<Self::Elem>;

    fn name(&self) -> &'static str;

    /// The public element `g`.
    fn generator(&self) -> &Self::Elem;

    /// The public endomorphism `φ` (power one).
    fn phi(&self) -> &Self::Endo;

    /// The semigroup operation `∘`.
    fn op(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// A uniformly random carrier element, used by sample-based checks.
    fn sample(&self, rng: &mut dyn RngCore) -> Self::Elem;
}

/// `(a_n, φ^n)`, the `n`-th power of `(g, φ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HolomorphPower<E, F> {
    pub a: E,
    pub phi_n: F,
    pub n: u64,
}

pub type PowerOf<P> = HolomorphPower<<P as Platform>::Elem, <P as Platform>::Endo>;

/// Holomorph product `(a, φ^m)(b, φ^k) = (φ^k(a) ∘ b, φ^{m+k})`.
pub fn holo_mul<P: Platform + ?Sized>(p: &P, x: &PowerOf<P>, y: &PowerOf<P>) -> PowerOf<P> {
    HolomorphPower {
        a: p.op(&y.phi_n.apply(&x.a), &y.a),
        phi_n: x.phi_n.compose(&y.phi_n),
        n: x.n + y.n,
    }
}

fn base<P: Platform + ?Sized>(p: &P) -> PowerOf<P> {
    HolomorphPower { a: p.generator().clone(), phi_n: p.phi().clone(), n: 1 }
}

/// `(g, φ)^n` by left-to-right square-and-multiply, `O(log n)` holomorph
/// products.
pub fn sdp_exp<P: Platform + ?Sized>(p: &P, n: u64) -> Result<PowerOf<P>> {
    if n == 0 {
        return Err(Error::InvalidParameter("exponent must be at least 1".into()));
    }
    let g = base(p);
    let mut acc = g.clone();
    for bit in (0..63 - n.leading_zeros()).rev() {
        acc = holo_mul(p, &acc, &acc);
        if n >> bit & 1 == 1 {
            acc = holo_mul(p, &acc, &g);
        }
    }
    Ok(acc)
}

/// Reference oracle: `n - 1` sequential products `(a_i, φ^i)(g, φ)`.
pub fn sdp_exp_naive<P: Platform + ?Sized>(p: &P, n: u64) -> Result<PowerOf<P>> {
    if n == 0 {
        return Err(Error::InvalidParameter("exponent must be at least 1".into()));
    }
    let g = base(p);
    let mut acc = g.clone();
    for _ in 1..n {
        acc = holo_mul(p, &acc, &g);
    }
    Ok(acc)
}

/// `φ^n` alone, by square-and-multiply on the endomorphism.
pub fn endo_pow<P: Platform + ?Sized>(p: &P, n: u64) -> Result<P::Endo> {
    if n == 0 {
        return Err(Error::InvalidParameter("exponent must be at least 1".into()));
    }
    let phi = p.phi();
    let mut acc = phi.clone();
    for bit in (0..63 - n.leading_zeros()).rev() {
        acc = acc.compose(&acc);
        if n >> bit & 1 == 1 {
            acc = acc.compose(phi);
        }
    }
    Ok(acc)
}

/// `φ(A) ∘ g`. For `A = a_x` this equals `φ^x(g) ∘ A`.
pub fn telescoping_residual<P: Platform + ?Sized>(p: &P, a: &P::Elem) -> P::Elem {
    p.op(&p.phi().apply(a), p.generator())
}

/// Sample-based check that `∘` is associative and `φ` respects it.
pub fn check_platform<P: Platform + ?Sized>(p: &P, trials: usize, rng: &mut dyn RngCore) -> Result<()> {
    let phi = p.phi();
    for _ in 0..trials {
        let (a, b, c) = (p.sample(rng), p.sample(rng), p.sample(rng));
        if p.op(&p.op(&a, &b), &c) != p.op(&a, &p.op(&b, &c)) {
            return Err(Error::Internal(format!("{}: operation is not associative", p.name())));
        }
        if phi.apply(&p.op(&a, &b)) != p.op(&phi.apply(&a), &phi.apply(&b)) {
            return Err(Error::Internal(format!("{}: φ is not an endomorphism", p.name())));
        }
    }
    Ok(())
}

/// `φ^n(M) = H^{-n} M H^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConjugatorPower<S> {
    pub h_pow: Matrix<S>,
    pub h_inv_pow: Matrix<S>,
    pub n: u64,
}

impl<S: Semiring> Endomorphism<Matrix<S>> for ConjugatorPower<S> {
    fn apply(&self, x: &Matrix<S>) -> Matrix<S> {
        &(&self.h_inv_pow * x) * &self.h_pow
    }

    fn compose(&self, other: &Self) -> Self {
        ConjugatorPower {
            h_pow: &other.h_pow * &self.h_pow,
            h_inv_pow: &self.h_inv_pow * &other.h_inv_pow,
            n: self.n + other.n,
        }
    }
}

/// `φ^n(M) = H1^n M H2^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoSidedPower<S> {
    pub left: Matrix<S>,
    pub right: Matrix<S>,
    pub n: u64,
}

impl<S: Semiring> Endomorphism<Matrix<S>> for TwoSidedPower<S> {
    fn apply(&self, x: &Matrix<S>) -> Matrix<S> {
        &(&self.left * x) * &self.right
    }

    fn compose(&self, other: &Self) -> Self {
        TwoSidedPower {
            left: &self.left * &other.left,
            right: &other.right * &self.right,
            n: self.n + other.n,
        }
    }
}

/// `φ^n(G) = G ⋆ H^{⋆n}`.
///
/// When `star` is `None` the platform failed its associativity check for `⋆`
/// and the power is applied by iterating `G ↦ G ⋆ H` `n` times.
#[derive(Clone, Debug, PartialEq)]
pub struct TropicalStarPower {
    pub h: Matrix<Tropical>,
    pub star: Option<Matrix<Tropical>>,
    pub n: u64,
}

impl Endomorphism<Matrix<Tropical>> for TropicalStarPower {
    fn apply(&self, x: &Matrix<Tropical>) -> Matrix<Tropical> {
        match &self.star {
            Some(s) => x.star(s),
            None => (0..self.n).fold(x.clone(), |acc, _| acc.star(&self.h)),
        }
    }

    fn compose(&self, other: &Self) -> Self {
        let star = match (&self.star, &other.star) {
            (Some(a), Some(b)) => Some(b.star(a)),
            _ => None,
        };
        TropicalStarPower { h: self.h.clone(), star, n: self.n + other.n }
    }
}

/// `φ^n` permutes the bits of every entry by `h^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct PermutationPower {
    pub perm: Permutation,
    pub n: u64,
}

impl Endomorphism<Matrix<BitString>> for PermutationPower {
    fn apply(&self, x: &Matrix<BitString>) -> Matrix<BitString> {
        perm_apply_matrix(&self.perm, x).unwrap_or_else(|e| panic!("{e}"))
    }

    fn compose(&self, other: &Self) -> Self {
        PermutationPower { perm: self.perm.compose(&other.perm), n: self.n + other.n }
    }
}

/// The identity endomorphism; the holomorph then degenerates to ordinary
/// powers `g^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct IdentityEnd;

impl<E: Clone> Endomorphism<E> for IdentityEnd {
    fn apply(&self, x: &E) -> E {
        x.clone()
    }

    fn compose(&self, _: &Self) -> Self {
        IdentityEnd
    }
}
