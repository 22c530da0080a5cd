use std::sync::Arc;

use super::zmod::{add_mod, mul_mod};
use super::{FiniteGroupTable, Linear, Ring, Semiring, ZMod};
use crate::error::{mismatch, Result};

/// The coefficient ring and group shared by every element of one `Z_m[G]`.
#[derive(Clone, Debug)]
pub struct GroupRingParams {
    pub group: Arc<FiniteGroupTable>,
    pub modulus: u64,
}

impl PartialEq for GroupRingParams {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus
            && (Arc::ptr_eq(&self.group, &other.group) || self.group == other.group)
    }
}

impl GroupRingParams {
    pub fn new(group: Arc<FiniteGroupTable>, modulus: u64) -> Self {
        assert!(modulus > 0, "modulus must be positive");
        GroupRingParams { group, modulus }
    }
}

/// An element `Σ a_g·g` of the group ring `Z_m[G]`, coefficients indexed by
/// group element.
#[derive(Clone, Debug)]
pub struct GroupRingElement {
    coeffs: Vec<u64>,
    params: GroupRingParams,
}

impl PartialEq for GroupRingElement {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.params == other.params
    }
}

impl GroupRingElement {
    pub fn new(params: &GroupRingParams, coeffs: Vec<u64>) -> Result<Self> {
        if coeffs.len() != params.group.order() {
            return Err(mismatch(format!(
                "expected {} coefficients, got {}",
                params.group.order(),
                coeffs.len()
            )));
        }
        let m = params.modulus;
        Ok(GroupRingElement {
            coeffs: coeffs.into_iter().map(|c| c % m).collect(),
            params: params.clone(),
        })
    }

    /// The basis element `δ_g`.
    pub fn delta(params: &GroupRingParams, g: usize) -> Self {
        let mut coeffs = vec![0; params.group.order()];
        coeffs[g] = 1 % params.modulus;
        GroupRingElement { coeffs, params: params.clone() }
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn group_params(&self) -> &GroupRingParams {
        &self.params
    }

    fn check(&self, rhs: &Self) -> Result<()> {
        if self.params != rhs.params {
            return Err(mismatch("group ring elements over different groups or moduli"));
        }
        Ok(())
    }
}

/// Convolution product `(ab)_h = Σ_{fg=h} a_f b_g`.
pub fn gr_mul(a: &GroupRingElement, b: &GroupRingElement) -> Result<GroupRingElement> {
    a.check(b)?;
    Ok(Semiring::mul(a, b))
}

/// `c·a + b`, componentwise.
pub fn gr_axpy(c: &ZMod, a: &GroupRingElement, b: &GroupRingElement) -> Result<GroupRingElement> {
    a.check(b)?;
    if c.modulus() != a.params.modulus {
        return Err(mismatch("scalar modulus differs from group ring modulus"));
    }
    Ok(Semiring::add(&a.scale(c.value()), b))
}

impl Semiring for GroupRingElement {
    type Params = GroupRingParams;

    fn params(&self) -> GroupRingParams {
        self.params.clone()
    }

    fn zero(params: &GroupRingParams) -> Self {
        GroupRingElement { coeffs: vec![0; params.group.order()], params: params.clone() }
    }

    fn one(params: &GroupRingParams) -> Self {
        Self::delta(params, params.group.identity())
    }

    fn add(&self, rhs: &Self) -> Self {
        let m = self.params.modulus;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(&a, &b)| add_mod(a, b, m))
            .collect();
        GroupRingElement { coeffs, params: self.params.clone() }
    }

    fn mul(&self, rhs: &Self) -> Self {
        let g = &self.params.group;
        let m = self.params.modulus;
        let n = g.order();
        let mut out = vec![0u64; n];
        // Small moduli let us defer reduction to the end of each row.
        let lazy = m < (1 << 28) && n < 256;
        for (f, &af) in self.coeffs.iter().enumerate() {
            if af == 0 {
                continue;
            }
            for (h, &bh) in rhs.coeffs.iter().enumerate() {
                if bh == 0 {
                    continue;
                }
                let k = g.mul(f, h);
                out[k] = if lazy { out[k] + af * bh } else { add_mod(out[k], mul_mod(af, bh, m), m) };
            }
            if lazy {
                for c in out.iter_mut() {
                    *c %= m;
                }
            }
        }
        GroupRingElement { coeffs: out, params: self.params.clone() }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

impl Ring for GroupRingElement {
    fn neg(&self) -> Self {
        let m = self.params.modulus;
        GroupRingElement {
            coeffs: self.coeffs.iter().map(|&c| (m - c) % m).collect(),
            params: self.params.clone(),
        }
    }
}

impl Linear for GroupRingElement {
    fn modulus(params: &GroupRingParams) -> u64 {
        params.modulus
    }

    fn dimension(params: &GroupRingParams) -> usize {
        params.group.order()
    }

    fn write_coords(&self, out: &mut Vec<u64>) {
        out.extend_from_slice(&self.coeffs);
    }

    fn from_coords(params: &GroupRingParams, coords: &[u64]) -> Self {
        let n = params.group.order();
        GroupRingElement {
            coeffs: coords[..n].iter().map(|&c| c % params.modulus).collect(),
            params: params.clone(),
        }
    }

    fn scale(&self, c: u64) -> Self {
        let m = self.params.modulus;
        GroupRingElement {
            coeffs: self.coeffs.iter().map(|&a| mul_mod(a, c % m, m)).collect(),
            params: self.params.clone(),
        }
    }
}
