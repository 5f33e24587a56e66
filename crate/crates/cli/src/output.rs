//! Output directory handling: manifest, JSON records and plot files.

use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use anyhow::Context;
use serde::Serialize;

/// Collects written files and writes `manifest.json` at the end of a run.
pub struct Outputs {
    dir: PathBuf,
    files: Vec<String>,
    started: SystemTime,
    clock: Instant,
}

#[derive(Serialize)]
struct Manifest<'a, C: Serialize> {
    subcommand: &'a str,
    version: &'a str,
    core_version: &'a str,
    threads: usize,
    seeds: Vec<(&'a str, u64)>,
    config: &'a C,
    outputs: &'a [String],
    started_unix: f64,
    wall_time_s: f64,
}

impl Outputs {
    pub fn create(dir: &Path) -> anyhow::Result<Self> {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        Ok(Self {
            dir: dir.to_path_buf(),
            files: vec![],
            started: SystemTime::now(),
            clock: Instant::now(),
        })
    }

    pub fn path(&mut self, name: &str) -> PathBuf {
        self.files.push(name.to_string());
        self.dir.join(name)
    }

    pub fn json<T: Serialize>(&mut self, name: &str, value: &T) -> anyhow::Result<()> {
        let p = self.path(name);
        let mut text = serde_json::to_string_pretty(value)?;
        text.push('\n');
        std::fs::write(&p, text).with_context(|| format!("writing {}", p.display()))
    }

    /// Two-column CSV plus a `.txt` sidecar naming the axes.
    pub fn plot(&mut self, name: &str, title: &str, x: &str, y: &str, rows: &[(f64, f64)]) -> anyhow::Result<()> {
        let p = self.path(&format!("{name}.csv"));
        let mut text = format!("{x},{y}\n");
        for (a, b) in rows {
            text.push_str(&format!("{a:?},{b:?}\n"));
        }
        std::fs::write(&p, text).with_context(|| format!("writing {}", p.display()))?;
        let side = self.path(&format!("{name}.txt"));
        let desc = format!("title: {title}\nx: {x}\ny: {y}\nrows: {}\nfile: {name}.csv\n", rows.len());
        std::fs::write(&side, desc).with_context(|| format!("writing {}", side.display()))
    }

    pub fn finish<C: Serialize>(
        mut self,
        subcommand: &str,
        threads: usize,
        seeds: Vec<(&str, u64)>,
        config: &C,
    ) -> anyhow::Result<PathBuf> {
        let wall = self.clock.elapsed().as_secs_f64();
        let started = self
            .started
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs_f64())
            .unwrap_or(0.0);
        let files = std::mem::take(&mut self.files);
        let m = Manifest {
            subcommand,
            version: env!("CARGO_PKG_VERSION"),
            core_version: hypspec::VERSION,
            threads,
            seeds,
            config,
            outputs: &files,
            started_unix: started,
            wall_time_s: wall,
        };
        let p = self.dir.join("manifest.json");
        let mut text = serde_json::to_string_pretty(&m)?;
        text.push('\n');
        std::fs::write(&p, text).with_context(|| format!("writing {}", p.display()))?;
        Ok(p)
    }
}
