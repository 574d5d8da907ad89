use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::key::{BasisKey, Kind};
use crate::scalars::{coordinate_box, GroupData, IndexSet};

/// A finite truncation: group indices whose `T`-basis coordinates are bounded
/// by `gamma_height`, loop degrees with `|i| <= loop_bound`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub gamma_height: u32,
    pub loop_bound: u32,
}

impl Default for Window {
    fn default() -> Self {
        Window { gamma_height: 3, loop_bound: 3 }
    }
}

impl Window {
    pub fn new(gamma_height: u32, loop_bound: u32) -> Self {
        Window { gamma_height, loop_bound }
    }

    /// Group values in the window, in increasing order.
    pub fn t_values(&self, group: &GroupData) -> Vec<crate::scalars::Scalar> {
        let h = i64::from(self.gamma_height);
        let lat = group.t_lattice();
        let mut out: Vec<_> = coordinate_box(lat.rank(), h)
            .into_iter()
            .map(|c| lat.combine(&c.into_iter().map(Into::into).collect::<Vec<_>>()))
            .collect();
        out.sort();
        out
    }

    pub fn gamma_values(&self, group: &GroupData) -> Vec<crate::scalars::Scalar> {
        self.t_values(group).into_iter().filter(|x| group.member(x, IndexSet::Gamma)).collect()
    }

    pub fn gamma1_values(&self, group: &GroupData) -> Vec<crate::scalars::Scalar> {
        self.t_values(group).into_iter().filter(|x| group.member(x, IndexSet::Gamma1)).collect()
    }

    pub fn loop_range(&self) -> std::ops::RangeInclusive<i64> {
        let b = i64::from(self.loop_bound);
        -b..=b
    }

    /// Every basis key of the window, sorted.
    pub fn keys(&self, group: &GroupData) -> Vec<BasisKey> {
        let mut out = Vec::new();
        for gamma in self.t_values(group) {
            let kinds: &[Kind] =
                if group.member(&gamma, IndexSet::Gamma) { &[Kind::L, Kind::M] } else { &[Kind::Y] };
            for &kind in kinds {
                for i in self.loop_range() {
                    out.push(BasisKey::new(kind, gamma.clone(), i));
                }
            }
        }
        out.sort();
        out
    }

    fn height(group: &GroupData, key: &BasisKey) -> Option<u64> {
        let coords = group.t_coordinates(&key.gamma)?;
        Some(coords.iter().map(|c| c.magnitude().to_u64().unwrap_or(u64::MAX)).max().unwrap_or(0))
    }

    pub fn contains(&self, group: &GroupData, key: &BasisKey) -> bool {
        key.loop_degree.unsigned_abs() <= u64::from(self.loop_bound)
            && Self::height(group, key).is_some_and(|h| h <= u64::from(self.gamma_height))
    }

    /// Inside the window and touching its edge in some coordinate.
    pub fn on_boundary(&self, group: &GroupData, key: &BasisKey) -> bool {
        self.contains(group, key)
            && (key.loop_degree.unsigned_abs() == u64::from(self.loop_bound)
                || Self::height(group, key) == Some(u64::from(self.gamma_height)))
    }
}
