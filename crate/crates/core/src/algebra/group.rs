use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite group given by its Cayley table. Elements are indices `0..order`.
///
/// The JSON form is `{order, product, identity, inverse}`; deserializing
/// validates the table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawTable")]
pub struct FiniteGroupTable {
    order: usize,
    product: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

#[derive(Deserialize)]
struct RawTable {
    order: usize,
    product: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl TryFrom<RawTable> for FiniteGroupTable {
    type Error = Error;

    fn try_from(raw: RawTable) -> Result<Self> {
        FiniteGroupTable::new(raw.order, raw.product, raw.identity, raw.inverse)
    }
}

impl FiniteGroupTable {
    /// Builds and validates a table: shape, closure, identity, inverses and
    /// associativity (full triple loop).
    pub fn new(
        order: usize,
        product: Vec<Vec<usize>>,
        identity: usize,
        inverse: Vec<usize>,
    ) -> Result<Self> {
        let table = FiniteGroupTable { order, product, identity, inverse };
        table.validate()?;
        Ok(table)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("group table serializes")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.product[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    fn validate(&self) -> Result<()> {
        let n = self.order;
        let bad = |msg: String| Err(Error::GroupTable(msg));
        if n == 0 {
            return bad("order must be positive".into());
        }
        if self.product.len() != n || self.product.iter().any(|row| row.len() != n) {
            return bad(format!("product table must be {n}x{n}"));
        }
        if self.inverse.len() != n {
            return bad(format!("inverse table must have length {n}"));
        }
        if self.identity >= n {
            return bad("identity index out of range".into());
        }
        if self.product.iter().flatten().chain(&self.inverse).any(|&x| x >= n) {
            return bad("element index out of range".into());
        }
        let e = self.identity;
        for a in 0..n {
            if self.product[e][a] != a || self.product[a][e] != a {
                return bad(format!("{e} is not a two-sided identity for {a}"));
            }
            let inv = self.inverse[a];
            if self.product[a][inv] != e || self.product[inv][a] != e {
                return bad(format!("inverse table wrong at {a}"));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.product[a][b];
                for c in 0..n {
                    if self.product[ab][c] != self.product[a][self.product[b][c]] {
                        return bad(format!("not associative at ({a}, {b}, {c})"));
                    }
                }
            }
        }
        Ok(())
    }
}

/// The groups shipped with the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupName {
    C2,
    S3,
    A4,
    A5,
}

impl GroupName {
    pub const ALL: [GroupName; 4] = [GroupName::C2, GroupName::S3, GroupName::A4, GroupName::A5];

    pub fn as_str(&self) -> &'static str {
        match self {
            GroupName::C2 => "C2",
            GroupName::S3 => "S3",
            GroupName::A4 => "A4",
            GroupName::A5 => "A5",
        }
    }

    fn source(&self) -> &'static str {
        match self {
            GroupName::C2 => include_str!("../../data/groups/c2.json"),
            GroupName::S3 => include_str!("../../data/groups/s3.json"),
            GroupName::A4 => include_str!("../../data/groups/a4.json"),
            GroupName::A5 => include_str!("../../data/groups/a5.json"),
        }
    }

    /// Shared, validated table. Loaded once per process.
    pub fn table(&self) -> Arc<FiniteGroupTable> {
        static CACHE: [OnceLock<Arc<FiniteGroupTable>>; 4] =
            [OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new()];
        let slot = &CACHE[*self as usize];
        slot.get_or_init(|| {
            Arc::new(FiniteGroupTable::from_json(self.source()).expect("bundled table is valid"))
        })
        .clone()
    }
}

impl fmt::Display for GroupName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GroupName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GroupName::ALL
            .into_iter()
            .find(|g| g.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidParameter(format!("unknown group {s:?}")))
    }
}
