//! Catalogs of representations: running the classifications, JSONL output
//! and run summaries.

use std::fmt::Write as _;
use std::io::{BufRead, Write};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::analysis::{GroupAnalysis, Limits};
use crate::dedup::{dedup_catalog, is_self_dual};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::oracle::{oracle_catalog, ORACLE_ORDER_LIMIT};
use crate::perm::Perm;
use crate::rank3::{generates, rank3_candidates, Rank3Options};
use crate::rank_high::{high_candidates, HighOptions};
use crate::sggi::{is_string_c_group, parabolic, GeneratorTuple, SchlafliType};

/// One representation in a catalog. Fields are declared in alphabetical
/// order, so serialized keys come out sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    /// Image arrays of `ρ0, .., ρ_{n-1}`.
    pub generators: Vec<Vec<u32>>,
    pub group_name: String,
    /// Orders of `G_0, .., G_{n-1}`.
    pub parabolic_orders: Vec<u64>,
    pub rank: usize,
    pub schlafli: SchlafliType,
    pub self_dual: bool,
}

impl CatalogEntry {
    pub fn from_tuple(group_name: &str, t: &GeneratorTuple) -> Result<Self> {
        Ok(CatalogEntry {
            generators: t.gens().iter().map(Perm::to_vec).collect(),
            group_name: group_name.to_string(),
            parabolic_orders: (0..t.rank()).map(|i| parabolic(t, &[i]).order() as u64).collect(),
            rank: t.rank(),
            schlafli: t.schlafli(),
            self_dual: is_self_dual(t)?,
        })
    }

    pub fn to_tuple(&self, ambient: &PermGroup) -> Result<GeneratorTuple> {
        let gens = self
            .generators
            .iter()
            .map(|g| Perm::from_images(&g.iter().map(|&x| x as usize).collect::<Vec<_>>()))
            .collect::<Result<Vec<_>>>()?;
        GeneratorTuple::new(ambient, gens)
    }

    /// Re-checks that the entry is a string C-group representation of
    /// `ambient` with the recorded data.
    pub fn verify(&self, ambient: &PermGroup, limits: Limits) -> Result<bool> {
        let t = self.to_tuple(ambient)?;
        Ok(t.rank() == self.rank
            && t.gens().iter().all(|g| ambient.contains(g))
            && generates(ambient, t.gens())?
            && is_string_c_group(&t, limits)?
            && t.schlafli() == self.schlafli
            && *self == CatalogEntry::from_tuple(&self.group_name, &t)?)
    }
}

/// Which ranks to classify.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankSelection {
    Three,
    High,
    All,
}

#[derive(Clone, Copy, Debug)]
pub struct ClassifyOptions {
    pub ranks: RankSelection,
    pub skip_c2: bool,
    pub max_rank: Option<usize>,
    pub limits: Limits,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            ranks: RankSelection::All,
            skip_c2: false,
            max_rank: None,
            limits: Limits::default(),
        }
    }
}

/// The outcome of a run.
#[derive(Clone, Debug)]
pub struct Report {
    pub group_name: String,
    pub group_order: u128,
    /// Representatives sorted by rank, then generators.
    pub catalog: Vec<GeneratorTuple>,
    pub timings: Vec<(&'static str, Duration)>,
}

impl Report {
    pub fn count_rank(&self, rank: usize) -> usize {
        self.catalog.iter().filter(|t| t.rank() == rank).count()
    }

    /// Number of representations of rank at least 4.
    pub fn count_high(&self) -> usize {
        self.catalog.iter().filter(|t| t.rank() >= 4).count()
    }

    pub fn entries(&self) -> Result<Vec<CatalogEntry>> {
        self.catalog
            .iter()
            .map(|t| CatalogEntry::from_tuple(&self.group_name, t))
            .collect()
    }

    pub fn summary(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "group {}  order {}", self.group_name, self.group_order);
        let _ = writeln!(s, "rank>3: {}, rank3: {}", self.count_high(), self.count_rank(3));
        let max = self.catalog.iter().map(GeneratorTuple::rank).max().unwrap_or(0);
        for rank in 2..=max {
            let n = self.count_rank(rank);
            if n > 0 {
                let _ = writeln!(s, "  rank {rank:>2}: {n}");
            }
        }
        let _ = writeln!(s, "{:<10} {:>10}", "phase", "seconds");
        for (phase, t) in &self.timings {
            let _ = writeln!(s, "{:<10} {:>10.3}", phase, t.as_secs_f64());
        }
        s
    }
}

/// Classifies the representations of `group` of the selected ranks.
pub fn run_classify(group: &PermGroup, group_name: &str, opts: ClassifyOptions) -> Result<Report> {
    let mut timings = Vec::new();
    let clock = Instant::now();
    let analysis = GroupAnalysis::new(group, opts.limits)?;
    timings.push(("classes", clock.elapsed()));

    let mut raw = Vec::new();
    if matches!(opts.ranks, RankSelection::High | RankSelection::All) && opts.max_rank.is_none_or(|m| m >= 4) {
        let clock = Instant::now();
        raw.extend(high_candidates(&analysis, HighOptions { max_rank: opts.max_rank })?);
        timings.push(("rank-high", clock.elapsed()));
    }
    if matches!(opts.ranks, RankSelection::Three | RankSelection::All) {
        let clock = Instant::now();
        raw.extend(rank3_candidates(&analysis, Rank3Options { skip_c2: opts.skip_c2 })?);
        timings.push(("rank3", clock.elapsed()));
    }
    let clock = Instant::now();
    let catalog = dedup_catalog(&raw, opts.limits)?;
    timings.push(("dedup", clock.elapsed()));
    Ok(Report {
        group_name: group_name.to_string(),
        group_order: group.order(),
        catalog,
        timings,
    })
}

/// Exhaustive enumeration for groups of order at most 2000.
pub fn run_oracle(
    group: &PermGroup,
    group_name: &str,
    min_rank: usize,
    max_rank: Option<usize>,
    limits: Limits,
) -> Result<Report> {
    if group.order() > ORACLE_ORDER_LIMIT {
        return Err(Error::too_large("group for the oracle", group.order(), ORACLE_ORDER_LIMIT));
    }
    let clock = Instant::now();
    let catalog = oracle_catalog(group, min_rank, max_rank, limits)?;
    Ok(Report {
        group_name: group_name.to_string(),
        group_order: group.order(),
        catalog,
        timings: vec![("oracle", clock.elapsed())],
    })
}

/// Writes one JSON object per line.
pub fn write_jsonl(entries: &[CatalogEntry], mut out: impl Write) -> Result<()> {
    for e in entries {
        serde_json::to_writer(&mut out, e)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

pub fn read_jsonl(input: impl BufRead) -> Result<Vec<CatalogEntry>> {
    let mut out = Vec::new();
    for line in input.lines() {
        let line = line?;
        if !line.trim().is_empty() {
            out.push(serde_json::from_str(&line)?);
        }
    }
    Ok(out)
}
