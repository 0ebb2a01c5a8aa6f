//! Summated rating scales: polarity recoding, Cronbach's α and a greedy
//! item analysis.

use serde::Serialize;

use crate::bivariate::pearson_r;
use crate::descriptive::variance_of;
use crate::error::{degenerate, insufficient, invalid, Measure, Result, StatError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Polarity {
    Normal,
    Reversed,
}

/// n respondents × m items, each rating an integer in [1, L].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ItemMatrix {
    ratings: Vec<Vec<u32>>,
    polarity: Vec<Polarity>,
    levels: u32,
}

pub const DEFAULT_LEVELS: u32 = 5;

impl ItemMatrix {
    /// Rows are respondents. `polarity` must have one entry per item.
    pub fn new(ratings: Vec<Vec<u32>>, polarity: Vec<Polarity>, levels: u32) -> Result<Self> {
        if levels < 2 {
            return Err(invalid(format!("need at least 2 rating levels, got {levels}")));
        }
        let m = polarity.len();
        if m == 0 {
            return Err(insufficient("no items"));
        }
        if ratings.is_empty() {
            return Err(StatError::EmptyInput);
        }
        for row in &ratings {
            if row.len() != m {
                return Err(StatError::LengthMismatch {
                    left: row.len(),
                    right: m,
                });
            }
            if let Some(&x) = row.iter().find(|x| **x < 1 || **x > levels) {
                return Err(StatError::OutOfRange(x as f64));
            }
        }
        Ok(Self {
            ratings,
            polarity,
            levels,
        })
    }

    /// All items normal, five levels.
    pub fn likert5(ratings: Vec<Vec<u32>>) -> Result<Self> {
        let m = ratings.first().map_or(0, Vec::len);
        Self::new(ratings, vec![Polarity::Normal; m], DEFAULT_LEVELS)
    }

    pub fn n(&self) -> usize {
        self.ratings.len()
    }

    pub fn m(&self) -> usize {
        self.polarity.len()
    }

    pub fn levels(&self) -> u32 {
        self.levels
    }

    pub fn polarity(&self) -> &[Polarity] {
        &self.polarity
    }

    pub fn ratings(&self) -> &[Vec<u32>] {
        &self.ratings
    }

    /// Item j after recoding, L + 1 − x for reversed items.
    pub fn item(&self, j: usize) -> Vec<f64> {
        let flip = self.polarity[j] == Polarity::Reversed;
        self.ratings
            .iter()
            .map(|row| {
                let x = row[j];
                (if flip { self.levels + 1 - x } else { x }) as f64
            })
            .collect()
    }

    fn columns(&self, keep: &[usize]) -> Vec<Vec<f64>> {
        keep.iter().map(|&j| self.item(j)).collect()
    }
}

fn row_sums(cols: &[Vec<f64>]) -> Vec<f64> {
    let n = cols.first().map_or(0, Vec::len);
    (0..n).map(|i| cols.iter().map(|c| c[i]).sum()).collect()
}

/// X_L = Σ X_i per respondent, after polarity recoding.
pub fn total_score(items: &ItemMatrix) -> Vec<f64> {
    row_sums(&items.columns(&(0..items.m()).collect::<Vec<_>>()))
}

fn alpha_of(cols: &[Vec<f64>]) -> Result<f64> {
    let m = cols.len();
    if m < 2 {
        return Err(insufficient("Cronbach's alpha needs at least two items"));
    }
    let total = variance_of(&row_sums(cols))?;
    if !(total > 0.0) {
        return Err(degenerate("total score variance is zero"));
    }
    let mut item_sum = 0.0;
    for c in cols {
        item_sum += variance_of(c)?;
    }
    let m = m as f64;
    Ok(m / (m - 1.0) * (1.0 - item_sum / total))
}

/// α = (m/(m−1))(1 − ΣS_i²/S_total²) with n − 1 denominators. Negative
/// values are returned unchanged.
pub fn cronbach_alpha(items: &ItemMatrix) -> Result<f64> {
    alpha_of(&items.columns(&(0..items.m()).collect::<Vec<_>>()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum TotalMode {
    /// Correlate with the sum of the other items.
    #[default]
    RestTotal,
    /// Correlate with the full sum, item included.
    WholeTotal,
}

pub const WEAK_ITEM_TOTAL: f64 = 0.5;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ItemTotal {
    pub item: usize,
    pub r: Measure,
    /// r < 0.5, or r absent.
    pub weak: bool,
}

fn item_totals(cols: &[Vec<f64>], ids: &[usize], mode: TotalMode) -> Vec<ItemTotal> {
    let total = row_sums(cols);
    cols.iter()
        .zip(ids)
        .map(|(c, &item)| {
            let other: Vec<f64> = match mode {
                TotalMode::RestTotal => total.iter().zip(c).map(|(t, x)| t - x).collect(),
                TotalMode::WholeTotal => total.clone(),
            };
            let r: Measure = pearson_r(c, &other).into();
            let weak = r.value().map_or(true, |r| r < WEAK_ITEM_TOTAL);
            ItemTotal { item, r, weak }
        })
        .collect()
}

pub fn item_total_correlations(items: &ItemMatrix, mode: TotalMode) -> Result<Vec<ItemTotal>> {
    if items.m() < 2 {
        return Err(insufficient("item-total correlations need at least two items"));
    }
    if items.n() < 2 {
        return Err(insufficient("item-total correlations need at least two respondents"));
    }
    let ids: Vec<usize> = (0..items.m()).collect();
    Ok(item_totals(&items.columns(&ids), &ids, mode))
}

pub const TARGET_ALPHA: f64 = 0.8;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DroppedItem {
    pub item: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ItemAnalysis {
    pub kept: Vec<usize>,
    pub dropped: Vec<DroppedItem>,
    /// α of the starting scale followed by α after each drop.
    pub alpha_trajectory: Vec<Measure>,
    pub item_totals: Vec<ItemTotal>,
    pub notes: Vec<String>,
}

/// Greedy item elimination.
///
/// Each round stops if α > 0.8 and no item is weak. Otherwise the item
/// whose removal raises α the most is dropped; failing that, the weakest
/// flagged item. Ties go to the lowest index and at least two items remain.
pub fn item_analysis(items: &ItemMatrix) -> Result<ItemAnalysis> {
    if items.m() < 3 {
        return Err(insufficient("item analysis needs at least three items"));
    }
    if items.n() < 2 {
        return Err(insufficient("item analysis needs at least two respondents"));
    }
    let mut kept: Vec<usize> = (0..items.m()).collect();
    let mut dropped = Vec::new();
    let mut trajectory = Vec::new();
    let mut notes = Vec::new();
    loop {
        let cols = items.columns(&kept);
        let alpha = alpha_of(&cols).ok();
        trajectory.push(alpha.map_or_else(|| Measure::absent("total score variance is zero"), Measure::Value));
        let totals = item_totals(&cols, &kept, TotalMode::RestTotal);
        if kept.len() <= 2 {
            break;
        }
        if alpha.is_some_and(|a| a > TARGET_ALPHA) && totals.iter().all(|t| !t.weak) {
            break;
        }
        let mut best: Option<(usize, f64)> = None;
        for pos in 0..kept.len() {
            let mut sub = cols.clone();
            sub.remove(pos);
            let Ok(a) = alpha_of(&sub) else { continue };
            let improves = alpha.map_or(true, |cur| a > cur);
            if improves && best.map_or(true, |(_, b)| a > b) {
                best = Some((pos, a));
            }
        }
        let (pos, reason) = if let Some((pos, a)) = best {
            let from = alpha.map_or("undefined".to_string(), |x| format!("{x:.4}"));
            (pos, format!("removal raises alpha from {from} to {a:.4}"))
        } else {
            let weakest = totals
                .iter()
                .enumerate()
                .filter(|(_, t)| t.weak)
                .min_by(|(_, a), (_, b)| {
                    let (ra, rb) = (a.r.value().unwrap_or(f64::NEG_INFINITY), b.r.value().unwrap_or(f64::NEG_INFINITY));
                    ra.total_cmp(&rb)
                });
            match weakest {
                Some((pos, t)) => {
                    let why = match t.r.value() {
                        Some(r) => format!("weak item-total correlation {r:.4} < {WEAK_ITEM_TOTAL}"),
                        None => "item-total correlation undefined".to_string(),
                    };
                    (pos, why)
                }
                None => break,
            }
        };
        dropped.push(DroppedItem {
            item: kept[pos],
            reason,
        });
        kept.remove(pos);
    }
    let cols = items.columns(&kept);
    let item_totals = item_totals(&cols, &kept, TotalMode::RestTotal);
    match trajectory.last().and_then(Measure::value) {
        Some(a) if a < 0.0 => notes.push(format!(
            "negative alpha {a:.4}: items may be misaligned; check polarity"
        )),
        Some(a) if a <= TARGET_ALPHA => notes.push(format!("final alpha {a:.4} does not exceed {TARGET_ALPHA}")),
        _ => {}
    }
    Ok(ItemAnalysis {
        kept,
        dropped,
        alpha_trajectory: trajectory,
        item_totals,
        notes,
    })
}
