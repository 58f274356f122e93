use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Homotopy type of a wedge of spheres, or the empty space.
///
/// `Spheres` maps a sphere dimension to its multiplicity; the empty map is a
/// contractible point.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum HomotopyType {
    Empty,
    Spheres(BTreeMap<usize, u64>),
}

impl HomotopyType {
    pub fn point() -> Self {
        HomotopyType::Spheres(BTreeMap::new())
    }

    pub fn sphere(dim: usize) -> Self {
        Self::spheres(dim, 1)
    }

    /// `count` copies of S^dim.
    pub fn spheres(dim: usize, count: u64) -> Self {
        let mut m = BTreeMap::new();
        if count > 0 {
            m.insert(dim, count);
        }
        HomotopyType::Spheres(m)
    }

    /// Wedge of one sphere per listed dimension.
    pub fn from_dims(dims: impl IntoIterator<Item = usize>) -> Self {
        let mut m = BTreeMap::new();
        for d in dims {
            *m.entry(d).or_insert(0) += 1;
        }
        HomotopyType::Spheres(m)
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, HomotopyType::Empty)
    }

    pub fn is_contractible(&self) -> bool {
        matches!(self, HomotopyType::Spheres(m) if m.is_empty())
    }

    pub fn multiplicity(&self, dim: usize) -> u64 {
        match self {
            HomotopyType::Empty => 0,
            HomotopyType::Spheres(m) => m.get(&dim).copied().unwrap_or(0),
        }
    }

    pub fn sphere_count(&self) -> u64 {
        match self {
            HomotopyType::Empty => 0,
            HomotopyType::Spheres(m) => m.values().sum(),
        }
    }

    /// susp(∅) = S⁰; otherwise every sphere moves up one dimension.
    pub fn susp(&self) -> Self {
        match self {
            HomotopyType::Empty => Self::sphere(0),
            HomotopyType::Spheres(m) => HomotopyType::Spheres(m.iter().map(|(&d, &c)| (d + 1, c)).collect()),
        }
    }

    /// Wedge of the inputs; the wedge of nothing is a point. The empty space
    /// may only appear as the sole operand.
    pub fn wedge(parts: &[HomotopyType]) -> Result<Self> {
        if let [only] = parts {
            return Ok(only.clone());
        }
        let mut m: BTreeMap<usize, u64> = BTreeMap::new();
        for p in parts {
            match p {
                HomotopyType::Empty => return Err(Error::WedgeWithEmpty),
                HomotopyType::Spheres(s) => {
                    for (&d, &c) in s {
                        *m.entry(d).or_insert(0) += c;
                    }
                }
            }
        }
        Ok(HomotopyType::Spheres(m))
    }

    /// Reduced Euler characteristic: −1 for the empty space.
    pub fn reduced_euler(&self) -> i64 {
        match self {
            HomotopyType::Empty => -1,
            HomotopyType::Spheres(m) => m
                .iter()
                .map(|(&d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) })
                .sum(),
        }
    }

    /// Expected reduced ℤ₂ Betti numbers b̃₀..b̃_top; `None` for the empty space.
    pub fn betti(&self) -> Option<Vec<u64>> {
        match self {
            HomotopyType::Empty => None,
            HomotopyType::Spheres(m) => {
                let top = m.keys().next_back().map_or(0, |&d| d + 1);
                Some((0..top).map(|d| m.get(&d).copied().unwrap_or(0)).collect())
            }
        }
    }
}

impl fmt::Display for HomotopyType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomotopyType::Empty => f.write_str("empty"),
            HomotopyType::Spheres(m) if m.is_empty() => f.write_str("point"),
            HomotopyType::Spheres(m) => {
                let parts: Vec<String> = m
                    .iter()
                    .map(|(d, c)| if *c == 1 { format!("S^{d}") } else { format!("{c}xS^{d}") })
                    .collect();
                f.write_str(&parts.join(" v "))
            }
        }
    }
}

#[derive(Serialize)]
struct SphereEntry {
    dim: usize,
    count: u64,
}

#[derive(Serialize)]
struct HomotopyJson {
    kind: &'static str,
    spheres: Vec<SphereEntry>,
    display: String,
}

impl Serialize for HomotopyType {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let (kind, spheres) = match self {
            HomotopyType::Empty => ("empty", Vec::new()),
            HomotopyType::Spheres(m) if m.is_empty() => ("contractible", Vec::new()),
            HomotopyType::Spheres(m) => {
                ("wedge_of_spheres", m.iter().map(|(&dim, &count)| SphereEntry { dim, count }).collect())
            }
        };
        HomotopyJson { kind, spheres, display: self.to_string() }.serialize(serializer)
    }
}
