//! Dense square tables indexed by ordered vertex pairs.

use std::fmt;

/// Sentinel for an unreachable pair. Never produced by arithmetic: every sum
/// goes through [`add`], which keeps it absorbing.
pub const INF: i64 = i64::MAX;

const NO_VERTEX: u32 = u32::MAX;

/// `a + b` over the integers extended with `+inf`.
#[inline]
pub fn add(a: i64, b: i64) -> i64 {
    if a == INF || b == INF {
        INF
    } else {
        a + b
    }
}

/// Shortest-path lengths; `None` means unreachable.
#[derive(Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<i64>,
}

impl DistanceMatrix {
    /// All entries `+inf` except a zero diagonal.
    pub fn new(n: usize) -> Self {
        let mut data = vec![INF; n * n];
        for v in 0..n {
            data[v * n + v] = 0;
        }
        DistanceMatrix { n, data }
    }

    pub(crate) fn from_raw(n: usize, data: Vec<i64>) -> Self {
        debug_assert_eq!(data.len(), n * n);
        DistanceMatrix { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, s: usize, t: usize) -> Option<i64> {
        match self.data[s * self.n + t] {
            INF => None,
            d => Some(d),
        }
    }

    /// Entry with `INF` for unreachable.
    #[inline]
    pub fn raw(&self, s: usize, t: usize) -> i64 {
        self.data[s * self.n + t]
    }

    #[inline]
    pub(crate) fn set(&mut self, s: usize, t: usize, d: i64) {
        self.data[s * self.n + t] = d;
    }

    #[inline]
    pub fn row(&self, s: usize) -> &[i64] {
        &self.data[s * self.n..(s + 1) * self.n]
    }

    pub(crate) fn as_slice(&self) -> &[i64] {
        &self.data
    }

    /// Every entry of `self` is at least the matching entry of `other`.
    pub fn dominates(&self, other: &DistanceMatrix) -> bool {
        self.n == other.n && self.data.iter().zip(&other.data).all(|(a, b)| a >= b)
    }
}

impl fmt::Debug for DistanceMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DistanceMatrix({})", self.n)?;
        for s in 0..self.n {
            let row: Vec<String> = self
                .row(s)
                .iter()
                .map(|&d| if d == INF { "inf".to_string() } else { d.to_string() })
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// `pi(s, t)` is the last-but-one vertex of the reported shortest `s -> t`
/// path; undefined on the diagonal and for unreachable pairs.
#[derive(Clone, PartialEq, Eq)]
pub struct PredecessorMatrix {
    n: usize,
    data: Vec<u32>,
}

impl PredecessorMatrix {
    pub fn new(n: usize) -> Self {
        PredecessorMatrix { n, data: vec![NO_VERTEX; n * n] }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, s: usize, t: usize) -> Option<usize> {
        match self.data[s * self.n + t] {
            NO_VERTEX => None,
            p => Some(p as usize),
        }
    }

    #[inline]
    pub(crate) fn set(&mut self, s: usize, t: usize, p: Option<usize>) {
        self.data[s * self.n + t] = p.map_or(NO_VERTEX, |p| p as u32);
    }
}

impl fmt::Debug for PredecessorMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PredecessorMatrix({})", self.n)?;
        for s in 0..self.n {
            let row: Vec<String> = (0..self.n)
                .map(|t| self.get(s, t).map_or("-".to_string(), |p| p.to_string()))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}
