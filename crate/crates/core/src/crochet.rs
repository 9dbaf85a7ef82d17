//! Row planning for a hyperbolic crochet piece.
//!
//! A circle of hyperbolic radius `r` has length `2π sinh r`. Anchoring the
//! first row (`r = 1`) to the starting chain count fixes a gauge, and every
//! later row gets `round(initial · sinh r / sinh 1)` chains. Each row is
//! worked by knitting a small number of new chains into every chain of the
//! row below; [`distribute_multipliers`] chooses those numbers.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::Serialize;

use crate::{Error, Result};

pub const DEFAULT_MAGIC_CIRCLE: u32 = 6;

pub fn circle_length(r: f64) -> Result<f64> {
    if !r.is_finite() || r < 0.0 {
        return Err(Error::invalid(format!(
            "radius must be finite and non-negative, got {r}"
        )));
    }
    Ok(std::f64::consts::TAU * r.sinh())
}

/// The adjustable starting loop; only printed as a preamble.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MagicCircle {
    chains: u32,
}

impl MagicCircle {
    pub fn new(chains: u32) -> Result<Self> {
        if chains < 3 {
            return Err(Error::invalid(format!(
                "a magic circle needs at least 3 chains, got {chains}"
            )));
        }
        Ok(MagicCircle { chains })
    }

    pub fn chains(&self) -> u32 {
        self.chains
    }
}

impl Default for MagicCircle {
    fn default() -> Self {
        MagicCircle {
            chains: DEFAULT_MAGIC_CIRCLE,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PlannedRow {
    pub radius: u32,
    pub length: f64,
    pub chains: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RowPlan {
    pub rows: Vec<PlannedRow>,
    /// Chains per unit of hyperbolic length.
    pub gauge: f64,
    pub initial_chains: u64,
    pub magic_circle: MagicCircle,
}

/// Rows for `r = 1..=max_radius`, the first one holding `initial_chains`.
pub fn plan_rows(initial_chains: u64, max_radius: u32) -> Result<RowPlan> {
    if initial_chains == 0 {
        return Err(Error::invalid("the first row needs at least one chain"));
    }
    if max_radius == 0 {
        return Err(Error::invalid("max radius must be at least 1"));
    }
    let base = 1f64.sinh();
    let rows = (1..=max_radius)
        .map(|r| {
            let rf = f64::from(r);
            let chains = (initial_chains as f64 * rf.sinh() / base).round();
            if !chains.is_finite() || chains > u64::MAX as f64 {
                return Err(Error::invalid(format!(
                    "row r={r} overflows the chain count"
                )));
            }
            Ok(PlannedRow {
                radius: r,
                length: circle_length(rf)?,
                chains: chains as u64,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RowPlan {
        rows,
        gauge: initial_chains as f64 / circle_length(1.0)?,
        initial_chains,
        magic_circle: MagicCircle::default(),
    })
}

impl RowPlan {
    pub fn with_magic_circle(mut self, magic: MagicCircle) -> Self {
        self.magic_circle = magic;
        self
    }

    pub fn chain_counts(&self) -> Vec<u64> {
        self.rows.iter().map(|r| r.chains).collect()
    }

    /// One pattern per pair of consecutive rows.
    pub fn patterns(&self, mode: PatternMode) -> Result<Vec<StitchPattern>> {
        self.rows
            .windows(2)
            .map(|w| distribute_multipliers(w[0].chains, w[1].chains, mode))
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("r,l,chains\n");
        for row in &self.rows {
            let _ = writeln!(out, "{},{:.2},{}", row.radius, row.length, row.chains);
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{:>4} {:>12} {:>10}\n", "r", "l", "chains");
        for row in &self.rows {
            let _ = writeln!(
                out,
                "{:>4} {:>12.2} {:>10}",
                row.radius, row.length, row.chains
            );
        }
        let _ = writeln!(out, "gauge: {:.4} chains per unit length", self.gauge);
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PatternMode {
    /// Larger multipliers spread as evenly as possible around the row.
    Even,
    /// A short block repeated around the row, leftovers at the end.
    Block,
}

impl FromStr for PatternMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "even" => Ok(PatternMode::Even),
            "block" => Ok(PatternMode::Block),
            other => Err(Error::invalid(format!("unknown pattern mode '{other}'"))),
        }
    }
}

impl fmt::Display for PatternMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PatternMode::Even => "even",
            PatternMode::Block => "block",
        })
    }
}

/// A repeated block followed by leftover multipliers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockLayout {
    pub block: Vec<u32>,
    pub repeats: usize,
    pub tail: Vec<u32>,
}

impl BlockLayout {
    pub fn expand(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.block.len() * self.repeats + self.tail.len());
        for _ in 0..self.repeats {
            out.extend_from_slice(&self.block);
        }
        out.extend_from_slice(&self.tail);
        out
    }
}

/// Per-chain multipliers taking one row to the next.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StitchPattern {
    pub multipliers: Vec<u32>,
    pub total: u64,
    pub mode: PatternMode,
    #[serde(skip)]
    layout: Option<BlockLayout>,
}

impl StitchPattern {
    pub fn parent_chains(&self) -> usize {
        self.multipliers.len()
    }

    /// `(multiplier, count)` pairs in ascending multiplier order.
    pub fn multiset(&self) -> Vec<(u32, usize)> {
        let mut out: Vec<(u32, usize)> = Vec::new();
        let mut sorted = self.multipliers.clone();
        sorted.sort_unstable();
        for m in sorted {
            match out.last_mut() {
                Some((v, c)) if *v == m => *c += 1,
                _ => out.push((m, 1)),
            }
        }
        out
    }

    /// Block structure, present in block mode.
    pub fn layout(&self) -> Option<&BlockLayout> {
        self.layout.as_ref()
    }
}

fn block_layout(lo: u32, lo_count: usize, hi: u32, hi_count: usize) -> BlockLayout {
    if hi_count == 0 || lo_count == 0 {
        let (value, count) = if hi_count == 0 {
            (lo, lo_count)
        } else {
            (hi, hi_count)
        };
        return BlockLayout {
            block: vec![value],
            repeats: count,
            tail: Vec::new(),
        };
    }
    let (major, major_count, minor, minor_count) = if hi_count >= lo_count {
        (hi, hi_count, lo, lo_count)
    } else {
        (lo, lo_count, hi, hi_count)
    };
    // Majors per block, nearest to the overall ratio.
    let per_block = ((major_count as f64 / minor_count as f64).round() as usize).max(1);
    let repeats = (major_count / per_block).min(minor_count);
    let mut block = vec![major; per_block];
    block.push(minor);
    let mut tail = vec![major; major_count - repeats * per_block];
    tail.extend(std::iter::repeat_n(minor, minor_count - repeats));
    BlockLayout {
        block,
        repeats,
        tail,
    }
}

/// Splits `target` new chains over `parent` existing ones using two
/// neighbouring multipliers `m = target / parent` and `m + 1`.
pub fn distribute_multipliers(
    parent: u64,
    target: u64,
    mode: PatternMode,
) -> Result<StitchPattern> {
    if parent == 0 {
        return Err(Error::invalid("the parent row needs at least one chain"));
    }
    if target < parent {
        return Err(Error::invalid(format!(
            "decreasing rows are not supported ({parent} -> {target})"
        )));
    }
    let lo = u32::try_from(target / parent)
        .map_err(|_| Error::invalid("growth ratio does not fit a stitch multiplier"))?;
    let hi = lo + 1;
    let hi_count = (target % parent) as usize;
    let parent_len = usize::try_from(parent).map_err(|_| Error::invalid("parent row too long"))?;
    let lo_count = parent_len - hi_count;

    let (multipliers, layout) = match mode {
        PatternMode::Even => {
            let p = parent as u128;
            let h = hi_count as u128;
            let m = (0..p)
                .map(|i| {
                    if ((i + 1) * h) / p > (i * h) / p {
                        hi
                    } else {
                        lo
                    }
                })
                .collect();
            (m, None)
        }
        PatternMode::Block => {
            let layout = block_layout(lo, lo_count, hi, hi_count);
            (layout.expand(), Some(layout))
        }
    };
    Ok(StitchPattern {
        multipliers,
        total: target,
        mode,
        layout,
    })
}

fn join_multipliers(ms: &[u32], sep: &str) -> String {
    ms.iter().map(u32::to_string).collect::<Vec<_>>().join(sep)
}

fn render_body(p: &StitchPattern) -> String {
    match p.layout() {
        Some(layout) if layout.repeats >= 2 => {
            let inner = if layout.block.iter().all(|&m| m < 10) {
                join_multipliers(&layout.block, "")
            } else {
                join_multipliers(&layout.block, ",")
            };
            let mut body = format!("[{inner}]×{}", layout.repeats);
            if !layout.tail.is_empty() {
                body.push_str(", ");
                body.push_str(&join_multipliers(&layout.tail, " "));
            }
            body
        }
        _ => join_multipliers(&p.multipliers, " "),
    }
}

/// Row-by-row knitting instructions, one line per row.
///
/// ```text
/// Magic circle: 6 chains
/// Foundation (r=1): 14 chains
/// Row 1 (r=2): 3 3 3 3 3 3 3 3 3 3 3 3 3 4 — 43 chains
/// Row 2 (r=3): [3332]×10, 3 3 3 — 119 chains
/// ```
pub fn render_pattern(plan: &RowPlan, mode: PatternMode) -> Result<String> {
    let mut out = String::new();
    let _ = writeln!(out, "Magic circle: {} chains", plan.magic_circle.chains());
    let Some(first) = plan.rows.first() else {
        return Ok(out);
    };
    let _ = writeln!(
        out,
        "Foundation (r={}): {} chains",
        first.radius, first.chains
    );
    for (i, (row, pattern)) in plan.rows[1..].iter().zip(plan.patterns(mode)?).enumerate() {
        let _ = writeln!(
            out,
            "Row {} (r={}): {} — {} chains",
            i + 1,
            row.radius,
            render_body(&pattern),
            row.chains
        );
    }
    Ok(out)
}

/// One line of rendered instructions read back.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedRow {
    pub label: String,
    /// Empty for the magic circle and the foundation row.
    pub multipliers: Vec<u32>,
    pub total: u64,
}

fn parse_total(s: &str) -> Result<u64> {
    s.trim()
        .strip_suffix("chains")
        .map(str::trim)
        .and_then(|n| n.parse().ok())
        .ok_or_else(|| Error::Parse(format!("expected '<count> chains', got '{s}'")))
}

fn parse_numbers(s: &str) -> Result<Vec<u32>> {
    s.split_whitespace()
        .map(|t| {
            t.parse()
                .map_err(|_| Error::Parse(format!("bad multiplier '{t}'")))
        })
        .collect()
}

fn parse_body(body: &str) -> Result<Vec<u32>> {
    let mut out = Vec::new();
    for chunk in body.split(", ") {
        let chunk = chunk.trim();
        if let Some(rest) = chunk.strip_prefix('[') {
            let (inner, reps) = rest
                .split_once("]×")
                .ok_or_else(|| Error::Parse(format!("bad block '{chunk}'")))?;
            let block: Vec<u32> = if inner.contains(',') {
                inner
                    .split(',')
                    .map(|t| {
                        t.trim()
                            .parse()
                            .map_err(|_| Error::Parse(format!("bad block '{chunk}'")))
                    })
                    .collect::<Result<_>>()?
            } else {
                inner
                    .chars()
                    .map(|c| {
                        c.to_digit(10)
                            .ok_or_else(|| Error::Parse(format!("bad block '{chunk}'")))
                    })
                    .collect::<Result<_>>()?
            };
            let reps: usize = reps
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad repeat count in '{chunk}'")))?;
            for _ in 0..reps {
                out.extend_from_slice(&block);
            }
        } else {
            out.extend(parse_numbers(chunk)?);
        }
    }
    Ok(out)
}

/// Reads text produced by [`render_pattern`].
pub fn parse_pattern(text: &str) -> Result<Vec<ParsedRow>> {
    let mut rows = Vec::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
        let (label, rest) = line
            .split_once(": ")
            .ok_or_else(|| Error::Parse(format!("missing ':' in '{line}'")))?;
        let (multipliers, total) = match rest.rsplit_once(" — ") {
            Some((body, total)) => (parse_body(body)?, parse_total(total)?),
            None => (Vec::new(), parse_total(rest)?),
        };
        rows.push(ParsedRow {
            label: label.to_string(),
            multipliers,
            total,
        });
    }
    Ok(rows)
}
