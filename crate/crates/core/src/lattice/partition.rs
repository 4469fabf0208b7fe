//! Integer partitions and the pairing `<lambda, mu>`.

use serde::{Deserialize, Serialize};

/// Weakly decreasing list of positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition(Vec<u64>);

impl Partition {
    /// Sorts the parts and drops zeros.
    pub fn new(mut parts: Vec<u64>) -> Partition {
        parts.retain(|p| *p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Partition {
        Partition(Vec::new())
    }

    /// `n` parts equal to 1.
    pub fn ones(n: u64) -> Partition {
        Partition(vec![1; n as usize])
    }

    pub fn parts(&self) -> &[u64] {
        &self.0
    }

    /// `|lambda|`.
    pub fn size(&self) -> u64 {
        self.0.iter().sum()
    }

    /// `l(lambda)`.
    pub fn len(&self) -> u64 {
        self.0.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        let n = self.0.first().copied().unwrap_or(0);
        Partition(
            (1..=n)
                .map(|i| self.0.iter().filter(|&&p| p >= i).count() as u64)
                .collect(),
        )
    }
}

/// `sum_i lambda'_i mu'_i`.
pub fn pairing_conjugate(l: &Partition, m: &Partition) -> u64 {
    let (lc, mc) = (l.conjugate(), m.conjugate());
    lc.0.iter().zip(mc.0.iter()).map(|(a, b)| a * b).sum()
}

/// `sum_{i,j} min(lambda_i, mu_j)`.
pub fn pairing_min(l: &Partition, m: &Partition) -> u64 {
    l.0.iter().flat_map(|a| m.0.iter().map(move |b| *a.min(b))).sum()
}

/// `<lambda, mu>`, computed both ways.
pub fn partition_pairing(l: &Partition, m: &Partition) -> u64 {
    let a = pairing_conjugate(l, m);
    let b = pairing_min(l, m);
    assert_eq!(a, b, "pairing formulas disagree on {l:?}, {m:?}");
    a
}
