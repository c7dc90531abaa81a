use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::time::Duration;

use crate::combinatorics::Count;
use crate::error::Error;

pub const STATS_HEADER: &str = "level,freq_count,actual_next,kk_next,kkstar_next,gkkstar_next,\
mu,mu_star,kk_total,kkstar_total,gkkstar_total,bound_ms,pass_ms";

/// Bounds and counts recorded after the pass that settled level `level`.
/// `None` marks a bound kind that was not evaluated.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BoundReport {
    pub level: usize,
    /// `|L_k|`.
    pub frequent: u64,
    /// `|C_{k+1}(L_k)|`.
    pub actual_next: u64,
    pub kk_next: Count,
    pub kk_star_next: Option<Count>,
    pub gkk_star_next: Option<Count>,
    pub mu: usize,
    pub mu_star: Option<usize>,
    pub kk_total: Count,
    pub kk_star_total: Option<Count>,
    pub gkk_star_total: Option<Count>,
    pub bound_time: Duration,
    /// Duration of the scan that counted level `level`.
    pub pass_time: Duration,
}

impl BoundReport {
    /// `|C_{k+1}| / KK*_{k+1}`; `None` when `KK*` was not evaluated or is 0.
    pub fn kk_star_ratio(&self) -> Option<f64> {
        let bound = self.kk_star_next.as_ref()?;
        let bound = bound.to_string().parse::<f64>().ok()?;
        (bound > 0.0).then(|| self.actual_next as f64 / bound)
    }

    fn csv_row(&self) -> String {
        fn opt<T: ToString>(v: &Option<T>) -> String {
            v.as_ref().map(ToString::to_string).unwrap_or_default()
        }
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{:.3},{:.3}",
            self.level,
            self.frequent,
            self.actual_next,
            self.kk_next,
            opt(&self.kk_star_next),
            opt(&self.gkk_star_next),
            self.mu,
            opt(&self.mu_star),
            self.kk_total,
            opt(&self.kk_star_total),
            opt(&self.gkk_star_total),
            self.bound_time.as_secs_f64() * 1e3,
            self.pass_time.as_secs_f64() * 1e3,
        )
    }
}

/// Writes the CSV header and one row per report.
pub fn write_stats_to<W: Write>(reports: &[BoundReport], mut out: W) -> io::Result<()> {
    writeln!(out, "{STATS_HEADER}")?;
    for r in reports {
        writeln!(out, "{}", r.csv_row())?;
    }
    out.flush()
}

/// Writes the stats CSV to `path`.
pub fn write_stats(reports: &[BoundReport], path: &Path) -> Result<(), Error> {
    let wrap = |source| Error::Write {
        path: path.to_path_buf(),
        source,
    };
    let file = File::create(path).map_err(wrap)?;
    write_stats_to(reports, BufWriter::new(file)).map_err(wrap)
}
