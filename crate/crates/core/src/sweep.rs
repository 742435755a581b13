//! (rate, exponent) sweeps over outer-code dimensions and their CSV/JSON
//! output.

use crate::concat::{construction1_full_params, construction2_full_params, ppm_bench_params};
use crate::cwc::CodeParams;
use crate::error::{Error, Result};
use crate::idsys::{id_metrics, DEFAULT_PRECISION_BITS};
use crate::real::sig12;
use crate::rs::RsVariant;
use serde::{Deserialize, Serialize};
use serde_json::json;
use std::fmt;
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Scheme {
    /// Modified prime sequences with two outer codes.
    C1 { p: u64 },
    /// Norm-equation code with two outer codes, optionally truncated.
    C2 {
        p: u64,
        m: u32,
        truncate: Option<u64>,
    },
    /// PPM inner code with two outer extended RS codes.
    PpmBench { q: u64 },
}

impl Scheme {
    pub fn name(&self) -> &'static str {
        match self {
            Scheme::C1 { .. } => "c1",
            Scheme::C2 { .. } => "c2",
            Scheme::PpmBench { .. } => "ppm-bench",
        }
    }

    /// Parameters for one sweep point. `variant` applies to the two
    /// constructions; the benchmark always uses extended RS codes.
    pub fn params(&self, k_o: u64, k_oo: u64, variant: RsVariant) -> Result<CodeParams> {
        match *self {
            Scheme::C1 { p } => construction1_full_params(p, k_o, k_oo, variant),
            Scheme::C2 { p, m, truncate } => {
                construction2_full_params(p, m, k_o, k_oo, variant, truncate)
            }
            Scheme::PpmBench { q } => ppm_bench_params(q, k_o, k_oo, RsVariant::Extended),
        }
    }

    fn p(&self) -> u64 {
        match *self {
            Scheme::C1 { p } | Scheme::C2 { p, .. } => p,
            Scheme::PpmBench { q } => q,
        }
    }

    fn m(&self) -> Option<u32> {
        match *self {
            Scheme::C2 { m, .. } => Some(m),
            _ => None,
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub schemes: Vec<Scheme>,
    pub variant: RsVariant,
    pub k_o: Vec<u64>,
    pub k_oo: Vec<u64>,
    pub precision_bits: u32,
}

impl Default for SweepConfig {
    /// c1 with p = 23, c2 with (p, m) = (5, 2) so both share GF(23), and the
    /// PPM benchmark over GF(23).
    fn default() -> Self {
        SweepConfig {
            schemes: vec![
                Scheme::C1 { p: 23 },
                Scheme::C2 {
                    p: 5,
                    m: 2,
                    truncate: None,
                },
                Scheme::PpmBench { q: 23 },
            ],
            variant: RsVariant::Standard,
            k_o: (1..=5).collect(),
            k_oo: vec![2, 4, 8, 16, 32, 64],
            precision_bits: DEFAULT_PRECISION_BITS,
        }
    }
}

/// One feasible sweep point. Reals carry 12 significant digits; an infinite
/// exponent (K = 0) appears as `inf` and its gap as `-inf`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub scheme: String,
    pub p: u64,
    pub m: Option<u32>,
    pub k_o: u64,
    pub k_oo: u64,
    #[serde(rename = "S")]
    pub s: u64,
    pub log2_n: f64,
    #[serde(rename = "W")]
    pub w: u64,
    #[serde(rename = "K")]
    pub k: u64,
    pub r_id: f64,
    pub e2: f64,
    pub gap: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SkipRecord {
    pub scheme: String,
    pub k_o: u64,
    pub k_oo: u64,
    pub reason: String,
}

#[derive(Debug, Clone, Default)]
pub struct SweepTable {
    pub rows: Vec<SweepRow>,
    pub skipped: Vec<SkipRecord>,
}

impl SweepTable {
    pub fn rows_for<'a>(&'a self, scheme: &'a str) -> impl Iterator<Item = &'a SweepRow> + 'a {
        self.rows.iter().filter(move |r| r.scheme == scheme)
    }
}

fn error_kind(e: &Error) -> String {
    let dbg = format!("{e:?}");
    let kind = dbg
        .split(['(', ' ', '{'])
        .next()
        .unwrap_or("Error")
        .to_string();
    format!("{kind}: {e}")
}

/// Evaluates every `(scheme, k_o, k_oo)` point; infeasible points become
/// skip records rather than errors.
pub fn run_sweep(cfg: &SweepConfig) -> SweepTable {
    let mut k_o = cfg.k_o.clone();
    let mut k_oo = cfg.k_oo.clone();
    k_o.sort_unstable();
    k_o.dedup();
    k_oo.sort_unstable();
    k_oo.dedup();

    let mut table = SweepTable::default();
    for scheme in &cfg.schemes {
        for &a in &k_o {
            for &b in &k_oo {
                let point = scheme
                    .params(a, b, cfg.variant)
                    .and_then(|p| id_metrics(&p, cfg.precision_bits).map(|m| (p, m)));
                match point {
                    Ok((params, m)) => table.rows.push(SweepRow {
                        scheme: scheme.name().to_string(),
                        p: scheme.p(),
                        m: scheme.m(),
                        k_o: a,
                        k_oo: b,
                        s: params.s,
                        log2_n: sig12(params.n.log2(cfg.precision_bits).to_f64()),
                        w: params.w,
                        k: params.k,
                        r_id: sig12(m.r_id.to_f64()),
                        e2: m.e2.map_or(f64::INFINITY, |v| sig12(v.to_f64())),
                        gap: m
                            .tradeoff_gap
                            .map_or(f64::NEG_INFINITY, |v| sig12(v.to_f64())),
                    }),
                    Err(e) => table.skipped.push(SkipRecord {
                        scheme: scheme.name().to_string(),
                        k_o: a,
                        k_oo: b,
                        reason: error_kind(&e),
                    }),
                }
            }
        }
    }
    table
}

/// Number of points on the `R + 2 E2 = 1` line written to the manifest.
const BOUND_LINE_SAMPLES: u64 = 20;

/// Path of the JSON manifest written next to `csv_path`.
pub fn manifest_path(csv_path: &Path) -> PathBuf {
    csv_path.with_extension("manifest.json")
}

pub fn manifest(table: &SweepTable, cfg: &SweepConfig) -> serde_json::Value {
    let mut schemes: Vec<&str> = Vec::new();
    for r in &table.rows {
        if !schemes.contains(&r.scheme.as_str()) {
            schemes.push(&r.scheme);
        }
    }
    // E2 = (1 - R) / 2 at R = i / n, i.e. (n - i) / (2 n) before reduction
    let line: Vec<_> = (0..=BOUND_LINE_SAMPLES)
        .map(|i| {
            let r = num_rational::Ratio::new(i, BOUND_LINE_SAMPLES);
            let e = num_rational::Ratio::new(BOUND_LINE_SAMPLES - i, 2 * BOUND_LINE_SAMPLES);
            json!({ "r_id": ratio_str(r), "e2": ratio_str(e) })
        })
        .collect();
    json!({
        "tool": env!("CARGO_PKG_NAME"),
        "version": env!("CARGO_PKG_VERSION"),
        "schemes": schemes,
        "variant": cfg.variant.to_string(),
        "k_o": cfg.k_o,
        "k_oo": cfg.k_oo,
        "precision_bits": cfg.precision_bits,
        "rows": table.rows.len(),
        "warnings": table.skipped.len(),
        "skipped": table.skipped,
        "bound_line": line,
    })
}

fn ratio_str(r: num_rational::Ratio<u64>) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn write_csv<W: std::io::Write>(rows: &[SweepRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: std::io::Read>(input: R) -> Result<Vec<SweepRow>> {
    let mut r = csv::Reader::from_reader(input);
    r.deserialize()
        .map(|row| row.map_err(Error::from))
        .collect()
}

/// Writes the CSV table to `csv_path` and the manifest beside it.
pub fn emit_plotdata(table: &SweepTable, cfg: &SweepConfig, csv_path: &Path) -> Result<PathBuf> {
    let mut buf = Vec::new();
    write_csv(&table.rows, &mut buf)?;
    if buf.is_empty() {
        // header only, so that an empty sweep still parses
        buf.extend_from_slice(b"scheme,p,m,k_o,k_oo,S,log2_n,W,K,r_id,e2,gap\n");
    }
    std::fs::write(csv_path, buf)?;
    let man = manifest_path(csv_path);
    let mut text = serde_json::to_string_pretty(&manifest(table, cfg))?;
    text.push('\n');
    std::fs::write(&man, text)?;
    Ok(man)
}
