//! Timing of the benchmark families, CSV output and log-log slope fits.

use std::fmt::Write;
use std::hint::black_box;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::circuit::{BenchFamily, CircuitError};
use crate::format::VERSION;
use crate::signature::Signature;

pub const CSV_HEADER: &str = "k,K,reps,mean_ns,min_ns,max_ns,omitted";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BenchConfig {
    pub family: BenchFamily,
    pub min_k: u32,
    pub max_k: u32,
    pub reps: usize,
    pub timeout: Duration,
    /// Recorded in the CSV header. The inputs themselves are deterministic.
    pub seed: u64,
}

impl BenchConfig {
    pub fn new(family: BenchFamily, max_k: u32) -> Self {
        Self {
            family,
            min_k: 1,
            max_k,
            reps: 10,
            timeout: Duration::from_secs(60),
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchRecord {
    pub family: BenchFamily,
    pub k: u32,
    /// Combined node count of the two inputs.
    pub size: usize,
    /// Shared boundary of a composition, zero for a tensor.
    pub boundary: usize,
    pub times_ns: Vec<u64>,
    pub omitted: bool,
}

impl BenchRecord {
    pub fn reps(&self) -> usize {
        self.times_ns.len()
    }

    pub fn mean_ns(&self) -> f64 {
        if self.times_ns.is_empty() {
            return 0.0;
        }
        self.times_ns.iter().map(|&t| t as f64).sum::<f64>() / self.times_ns.len() as f64
    }

    pub fn min_ns(&self) -> u64 {
        self.times_ns.iter().copied().min().unwrap_or(0)
    }

    pub fn max_ns(&self) -> u64 {
        self.times_ns.iter().copied().max().unwrap_or(0)
    }
}

fn nanos(d: Duration) -> u64 {
    d.as_nanos().min(u64::MAX as u128) as u64
}

/// Asks the system allocator to keep freed memory in the heap instead of
/// returning large blocks to the kernel. Without this, every large result
/// is served from fresh pages and timings above a few megabytes are
/// dominated by page faults. Process-wide; a no-op off glibc.
pub fn retain_freed_memory() {
    #[cfg(all(target_os = "linux", target_env = "gnu"))]
    // SAFETY: mallopt only adjusts allocator tunables.
    unsafe {
        libc::mallopt(libc::M_MMAP_THRESHOLD, 1 << 30);
        libc::mallopt(libc::M_TRIM_THRESHOLD, i32::MAX);
    }
}

/// Measures one value of `k`: build both inputs, run the combine once to
/// warm up, then time `reps` further runs. Only the combine call is timed;
/// dropping its result is not. A build, warm-up or repetition over the
/// timeout marks the record omitted.
pub fn measure(config: &BenchConfig, sig: &Signature, k: u32) -> Result<BenchRecord, CircuitError> {
    let family = config.family;
    let start = Instant::now();
    let (f, g) = family.build(sig, k)?;
    let mut record = BenchRecord {
        family,
        k,
        size: f.size() + g.size(),
        boundary: match family {
            BenchFamily::Tensor => 0,
            _ => f.cod(),
        },
        times_ns: Vec::with_capacity(config.reps),
        omitted: start.elapsed() > config.timeout,
    };
    if record.omitted {
        return Ok(record);
    }
    let warm = Instant::now();
    drop(black_box(family.combine(black_box(&f), black_box(&g))?));
    if warm.elapsed() > config.timeout {
        record.omitted = true;
        return Ok(record);
    }
    for _ in 0..config.reps {
        let t = Instant::now();
        let out = black_box(family.combine(black_box(&f), black_box(&g))?);
        let elapsed = t.elapsed();
        drop(out);
        record.times_ns.push(nanos(elapsed));
        if elapsed > config.timeout {
            record.omitted = true;
            break;
        }
    }
    Ok(record)
}

/// Runs `min_k..=max_k`, stopping after the first omitted record.
/// `progress` sees each record as it is produced.
pub fn run(
    config: &BenchConfig,
    sig: &Signature,
    mut progress: impl FnMut(&BenchRecord),
) -> Result<Vec<BenchRecord>, CircuitError> {
    let mut records = Vec::new();
    for k in config.min_k.max(1)..=config.max_k {
        let record = measure(config, sig, k)?;
        progress(&record);
        let stop = record.omitted;
        records.push(record);
        if stop {
            break;
        }
    }
    Ok(records)
}

pub fn csv_preamble(family: BenchFamily, seed: u64) -> String {
    format!("{VERSION} bench family={family} seed={seed}\n{CSV_HEADER}\n")
}

pub fn csv_row(r: &BenchRecord) -> String {
    format!(
        "{},{},{},{:.1},{},{},{}\n",
        r.k,
        r.size,
        r.reps(),
        r.mean_ns(),
        r.min_ns(),
        r.max_ns(),
        r.omitted as u8
    )
}

pub fn to_csv(config: &BenchConfig, records: &[BenchRecord]) -> String {
    let mut out = csv_preamble(config.family, config.seed);
    for r in records {
        out.push_str(&csv_row(r));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CsvError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CsvRow {
    pub k: u32,
    pub size: usize,
    pub reps: usize,
    pub mean_ns: f64,
    pub min_ns: u64,
    pub max_ns: u64,
    pub omitted: bool,
}

impl From<&BenchRecord> for CsvRow {
    fn from(r: &BenchRecord) -> Self {
        Self {
            k: r.k,
            size: r.size,
            reps: r.reps(),
            mean_ns: r.mean_ns(),
            min_ns: r.min_ns(),
            max_ns: r.max_ns(),
            omitted: r.omitted,
        }
    }
}

pub fn parse_csv(text: &str) -> Result<Vec<CsvRow>, CsvError> {
    let err = |line: usize, msg: String| CsvError::Syntax {
        line: line + 1,
        msg,
    };
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    match lines.next() {
        Some((_, l)) if l.split_whitespace().next() == Some(VERSION) => {}
        Some((i, l)) => {
            return Err(err(
                i,
                format!("expected `{VERSION}` preamble, found `{l}`"),
            ))
        }
        None => return Err(err(0, "empty file".into())),
    }
    match lines.next() {
        Some((_, l)) if l.trim() == CSV_HEADER => {}
        Some((i, l)) => {
            return Err(err(
                i,
                format!("expected header `{CSV_HEADER}`, found `{l}`"),
            ))
        }
        None => return Err(err(1, "missing header".into())),
    }
    lines
        .map(|(i, l)| {
            let f: Vec<&str> = l.trim().split(',').collect();
            if f.len() != 7 {
                return Err(err(i, format!("expected 7 fields, found {}", f.len())));
            }
            let bad = |name: &str| err(i, format!("bad {name} `{l}`"));
            Ok(CsvRow {
                k: f[0].parse().map_err(|_| bad("k"))?,
                size: f[1].parse().map_err(|_| bad("K"))?,
                reps: f[2].parse().map_err(|_| bad("reps"))?,
                mean_ns: f[3].parse().map_err(|_| bad("mean_ns"))?,
                min_ns: f[4].parse().map_err(|_| bad("min_ns"))?,
                max_ns: f[5].parse().map_err(|_| bad("max_ns"))?,
                omitted: match f[6] {
                    "0" => false,
                    "1" => true,
                    _ => return Err(bad("omitted")),
                },
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlopeFit {
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square residual in log2 units.
    pub residual: f64,
    pub points: usize,
}

/// Least-squares line through `(log2 x, log2 y)`. Needs two distinct `x`.
pub fn fit_loglog(points: &[(f64, f64)]) -> Option<SlopeFit> {
    let logs: Vec<(f64, f64)> = points
        .iter()
        .filter(|(x, y)| *x > 0.0 && *y > 0.0)
        .map(|(x, y)| (x.log2(), y.log2()))
        .collect();
    let n = logs.len() as f64;
    if logs.len() < 2 {
        return None;
    }
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = logs
        .iter()
        .map(|p| (p.1 - intercept - slope * p.0).powi(2))
        .sum();
    Some(SlopeFit {
        slope,
        intercept,
        residual: (sse / n).sqrt(),
        points: logs.len(),
    })
}

/// Slope of mean time against `K` over rows with `k_min <= k <= k_max`
/// that were not omitted.
pub fn slope_fit(rows: &[CsvRow], k_min: u32, k_max: u32) -> Option<SlopeFit> {
    let points: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| !r.omitted && (k_min..=k_max).contains(&r.k))
        .map(|r| (r.size as f64, r.mean_ns))
        .collect();
    fit_loglog(&points)
}

/// A gnuplot script plotting mean time with min/max error bars on log-log
/// axes.
pub fn gnuplot_script(csv_path: &str, family: BenchFamily) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "set datafile separator ','");
    let _ = writeln!(s, "set logscale xy 2");
    let _ = writeln!(s, "set xlabel 'nodes K'");
    let _ = writeln!(s, "set ylabel 'time (ns)'");
    let _ = writeln!(s, "set title '{family}'");
    let _ = writeln!(s, "set key top left");
    let _ = writeln!(
        s,
        "plot '{csv_path}' every ::2 using 2:4:5:6 with yerrorlines title 'mean (min, max)'"
    );
    s
}
