//! Domain types shared by every module: frames, summaries, distance
//! matrices, matchings and thresholds, plus matrix construction and
//! matching validation.

use crate::error::{Error, Result};
use crate::features::{frame_distance, MetricKind};

/// Dense-matrix stand-in for an absent edge. Guaranteed to compare `>=`
/// any threshold accepted in normal use, so thresholded matchers never
/// select it.
pub const SENTINEL_WEIGHT: f64 = 1e9;

/// Normalized histogram mass over feature bins.
///
/// Entries are finite, non-negative, and sum to 1 within 1e-9. The hue
/// extractor produces 16 bins; the dimension is carried so mixed feature
/// pipelines are rejected instead of silently compared.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureVector {
    bins: Vec<f64>,
}

impl FeatureVector {
    const SUM_TOLERANCE: f64 = 1e-9;

    pub fn new(bins: Vec<f64>) -> Result<Self> {
        if bins.is_empty() {
            return Err(Error::InvalidFeature("no bins".into()));
        }
        if let Some(bad) = bins.iter().find(|b| !b.is_finite() || **b < 0.0) {
            return Err(Error::InvalidFeature(format!(
                "bin value {bad} is negative or not finite"
            )));
        }
        let sum: f64 = bins.iter().sum();
        if (sum - 1.0).abs() > Self::SUM_TOLERANCE {
            return Err(Error::InvalidFeature(format!(
                "bins sum to {sum}, expected 1"
            )));
        }
        Ok(Self { bins })
    }

    pub fn bins(&self) -> &[f64] {
        &self.bins
    }

    pub fn dim(&self) -> usize {
        self.bins.len()
    }
}

/// One keyframe: its position in the source summary, a label (usually the
/// source filename), and its feature vector.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    pub index: usize,
    pub label: String,
    pub features: FeatureVector,
}

impl Frame {
    pub fn new(index: usize, label: impl Into<String>, features: FeatureVector) -> Self {
        Self {
            index,
            label: label.into(),
            features,
        }
    }
}

/// A keyframe summary: a non-empty sequence of frames in temporal order.
///
/// Storage order is temporal order; frame indices are strictly increasing.
/// The order-dependent matcher relies on this.
#[derive(Debug, Clone, PartialEq)]
pub struct Summary {
    name: String,
    frames: Vec<Frame>,
}

impl Summary {
    pub fn new(name: impl Into<String>, frames: Vec<Frame>) -> Result<Self> {
        if frames.is_empty() {
            return Err(Error::EmptySummary);
        }
        for pair in frames.windows(2) {
            if pair[1].index <= pair[0].index {
                return Err(Error::InvalidSummary(format!(
                    "frame index {} does not increase after {}",
                    pair[1].index, pair[0].index
                )));
            }
        }
        let dim = frames[0].features.dim();
        if let Some(f) = frames.iter().find(|f| f.features.dim() != dim) {
            return Err(Error::FeatureDimensionMismatch {
                left: dim,
                right: f.features.dim(),
            });
        }
        Ok(Self {
            name: name.into(),
            frames,
        })
    }

    /// Builds a summary from labeled features, assigning indices 0, 1, …
    /// in the given order.
    pub fn from_features(
        name: impl Into<String>,
        labeled: Vec<(String, FeatureVector)>,
    ) -> Result<Self> {
        let frames = labeled
            .into_iter()
            .enumerate()
            .map(|(i, (label, features))| Frame::new(i, label, features))
            .collect();
        Self::new(name, frames)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn frames(&self) -> &[Frame] {
        &self.frames
    }

    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }

    /// Feature dimension shared by all frames.
    pub fn feature_dim(&self) -> usize {
        self.frames[0].features.dim()
    }
}

/// Dense matrix of non-negative inter-frame distances. Rows index the
/// candidate summary, columns the reference summary.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DistanceMatrix {
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(Error::InvalidMatrix("matrix has no entries".into()));
        }
        let cols = rows[0].len();
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::RaggedMatrix {
                    row: i,
                    got: row.len(),
                    expected: cols,
                });
            }
            for (j, &v) in row.iter().enumerate() {
                if !v.is_finite() {
                    return Err(Error::InvalidDistance {
                        row: i,
                        col: j,
                        token: v.to_string(),
                    });
                }
                if v < 0.0 {
                    return Err(Error::NegativeDistance {
                        row: i,
                        col: j,
                        value: v,
                    });
                }
                data.push(v);
            }
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        assert!(row < self.rows && col < self.cols, "matrix index out of range");
        self.data[row * self.cols + col]
    }

    /// Largest matching cardinality the matrix supports.
    pub fn max_cardinality(&self) -> usize {
        self.rows.min(self.cols)
    }

    /// Entries of one row, in column order.
    pub fn row(&self, row: usize) -> &[f64] {
        &self.data[row * self.cols..(row + 1) * self.cols]
    }
}

/// One matched pair: candidate row, reference column, and the matrix
/// entry at that position.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatchPair {
    pub row: usize,
    pub col: usize,
    pub weight: f64,
}

/// A set of pairs with no shared rows and no shared columns.
///
/// Pairs keep the order in which the producing algorithm emitted them
/// (selection order for the greedy matcher, row order elsewhere), which
/// keeps serialized output deterministic.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Matching {
    pairs: Vec<MatchPair>,
}

impl Matching {
    pub fn new() -> Self {
        Self::default()
    }

    /// Wraps an arbitrary pair list. Invariants are not enforced here;
    /// use [`validate_matching`] to check a candidate set.
    pub fn from_pairs(pairs: Vec<MatchPair>) -> Self {
        Self { pairs }
    }

    pub fn pairs(&self) -> &[MatchPair] {
        &self.pairs
    }

    pub fn cardinality(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn total_weight(&self) -> f64 {
        self.pairs.iter().map(|p| p.weight).sum()
    }

    pub fn contains_pair(&self, row: usize, col: usize) -> bool {
        self.pairs.iter().any(|p| p.row == row && p.col == col)
    }

    /// True when every (row, col) of `self` also appears in `other`.
    pub fn is_subset_of(&self, other: &Matching) -> bool {
        self.pairs
            .iter()
            .all(|p| other.contains_pair(p.row, p.col))
    }
}

/// Strictly positive distance threshold. Comparison against it is strict
/// (`weight < theta`) everywhere in this crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Threshold {
    theta: f64,
}

impl Threshold {
    pub fn new(theta: f64) -> Result<Self> {
        if theta.is_nan() || theta <= 0.0 {
            return Err(Error::InvalidThreshold(theta));
        }
        Ok(Self { theta })
    }

    /// A threshold above every representable weight; admits every edge.
    pub fn unbounded() -> Self {
        Self {
            theta: f64::INFINITY,
        }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// The strict admission test shared by all thresholded matchers.
    pub fn admits(&self, weight: f64) -> bool {
        weight < self.theta
    }
}

/// Builds the dense distance matrix between two summaries: entry (i, j)
/// is the metric distance between frame i of `a` and frame j of `b`.
pub fn build_distance_matrix(
    a: &Summary,
    b: &Summary,
    metric: MetricKind,
) -> Result<DistanceMatrix> {
    if a.feature_dim() != b.feature_dim() {
        return Err(Error::FeatureDimensionMismatch {
            left: a.feature_dim(),
            right: b.feature_dim(),
        });
    }
    let mut data = Vec::with_capacity(a.len() * b.len());
    for fa in a.frames() {
        for fb in b.frames() {
            data.push(frame_distance(&fa.features, &fb.features, metric)?);
        }
    }
    Ok(DistanceMatrix {
        rows: a.len(),
        cols: b.len(),
        data,
    })
}

/// Checks a pair set against a matrix and threshold: rows disjoint,
/// columns disjoint, every weight equal to its matrix entry and strictly
/// below `t`. Out-of-range indices are an error rather than `false`.
pub fn validate_matching(m: &Matching, d: &DistanceMatrix, t: Threshold) -> Result<bool> {
    let mut row_used = vec![false; d.rows()];
    let mut col_used = vec![false; d.cols()];
    for p in m.pairs() {
        if p.row >= d.rows() || p.col >= d.cols() {
            return Err(Error::PairIndexOutOfRange {
                row: p.row,
                col: p.col,
                rows: d.rows(),
                cols: d.cols(),
            });
        }
        if row_used[p.row] || col_used[p.col] {
            return Ok(false);
        }
        row_used[p.row] = true;
        col_used[p.col] = true;
        if p.weight != d.get(p.row, p.col) || !t.admits(p.weight) {
            return Ok(false);
        }
    }
    Ok(true)
}
