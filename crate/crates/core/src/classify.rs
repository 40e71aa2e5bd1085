//! Alternating sum types, length types, basic units and the special-unit
//! case split used for the (Σ, 2) family at modulus 3.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{AltSumType, LengthType, Modulus, Partition};

/// Alternating sum type of `p` after zero padding to a multiple of `m`.
///
/// Σ_j sums λ_{(i−1)m+j} − λ_{(i−1)m+j+1} over all blocks i.
pub fn alt_sum_type(p: &Partition, m: Modulus) -> AltSumType {
    let width = m.get() as usize;
    let mut sigma = vec![0u32; m.type_len()];
    for unit in p.padded(m).chunks_exact(width) {
        for (j, s) in sigma.iter_mut().enumerate() {
            *s += unit[j] - unit[j + 1];
        }
    }
    AltSumType(sigma)
}

/// Counts parts in each nonzero residue class mod `m`.
pub fn length_type(p: &Partition, m: Modulus) -> Result<LengthType> {
    let mut lengths = vec![0u32; m.type_len()];
    for &part in p.parts() {
        let r = part % m.get();
        if r == 0 {
            return Err(Error::Domain(format!(
                "part {part} of {p} is divisible by the modulus {m}"
            )));
        }
        lengths[(r - 1) as usize] += 1;
    }
    Ok(LengthType(lengths))
}

/// Second-position gap inside a unit: λ'_2 − λ'_3 equal to 1 or 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpecialKind {
    None,
    Gap1,
    Gap2,
}

/// One length-m block of the zero-padded partition.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BasicUnit {
    pub parts: Vec<u32>,
    pub special: SpecialKind,
}

impl BasicUnit {
    fn new(parts: &[u32]) -> Self {
        let special = match parts {
            [_, second, third, ..] => match second - third {
                1 => SpecialKind::Gap1,
                2 => SpecialKind::Gap2,
                _ => SpecialKind::None,
            },
            _ => SpecialKind::None,
        };
        Self { parts: parts.to_vec(), special }
    }

    pub fn is_special(&self) -> bool {
        self.special != SpecialKind::None
    }
}

/// Splits the zero-padded partition into consecutive m-tuples.
pub fn basic_units(p: &Partition, m: Modulus) -> Vec<BasicUnit> {
    p.padded(m)
        .chunks_exact(m.get() as usize)
        .map(BasicUnit::new)
        .collect()
}

/// Case split for modulus-3 partitions of type (Σ, 2) in P.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, PartialOrd, Ord)]
pub enum UnitCase {
    /// Two units with λ'_2 − λ'_3 = 1.
    CaseA,
    /// One unit with λ'_2 − λ'_3 = 2.
    CaseB,
    Neither,
}

const M3: Modulus = Modulus::THREE;

fn check_sigma2_family(p: &Partition) -> Result<()> {
    if p.max_multiplicity() > 2 {
        return Err(Error::Domain(format!("{p} repeats a part more than twice")));
    }
    let t = alt_sum_type(p, M3);
    if t.0[1] != 2 {
        return Err(Error::Domain(format!("{p} has type {t}, expected (Σ,2)")));
    }
    Ok(())
}

/// Classifies a modulus-3 partition of type (Σ, 2) in P as Case A or Case B.
pub fn case_classify(p: &Partition) -> Result<UnitCase> {
    check_sigma2_family(p)?;
    let units = basic_units(p, M3);
    let gap1 = units.iter().filter(|u| u.special == SpecialKind::Gap1).count();
    let gap2 = units.iter().filter(|u| u.special == SpecialKind::Gap2).count();
    Ok(match (gap1, gap2) {
        (2, 0) => UnitCase::CaseA,
        (0, 1) => UnitCase::CaseB,
        _ => UnitCase::Neither,
    })
}

/// Number of non-special units strictly between the two special units of a
/// Case A partition.
pub fn unit_distance(p: &Partition) -> Result<u32> {
    if case_classify(p)? != UnitCase::CaseA {
        return Err(Error::Domain(format!("{p} is not in Case A")));
    }
    let positions: Vec<usize> = basic_units(p, M3)
        .iter()
        .enumerate()
        .filter(|(_, u)| u.special == SpecialKind::Gap1)
        .map(|(i, _)| i)
        .collect();
    Ok((positions[1] - positions[0] - 1) as u32)
}
