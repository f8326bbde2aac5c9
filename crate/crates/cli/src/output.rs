use std::fs;
use std::path::{Path, PathBuf};

use anyhow::Context;
use serde::Serialize;

use crate::{Format, RunConfig};

/// Writes result files into the output directory.
///
/// JSON is pretty-printed with a trailing newline; CSV follows RFC 4180.
/// Floats use the shortest round-trip decimal form in both.
pub struct Output {
    dir: PathBuf,
    format: Option<Format>,
}

impl Output {
    pub fn create(config: &RunConfig) -> anyhow::Result<Self> {
        fs::create_dir_all(&config.out)
            .with_context(|| format!("cannot create output directory {}", config.out.display()))?;
        Ok(Self { dir: config.out.clone(), format: config.format })
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.join(name)
    }

    fn wants(&self, format: Format) -> bool {
        self.format.is_none_or(|f| f == format)
    }

    pub fn json<T: Serialize>(&self, name: &str, value: &T) -> anyhow::Result<()> {
        if !self.wants(Format::Json) {
            return Ok(());
        }
        let mut text = serde_json::to_string_pretty(value)?;
        text.push('\n');
        write(&self.path(name), text.as_bytes())
    }

    pub fn csv<T: Serialize>(&self, name: &str, rows: impl IntoIterator<Item = T>) -> anyhow::Result<()> {
        if !self.wants(Format::Csv) {
            return Ok(());
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        for row in rows {
            w.serialize(row)?;
        }
        write(&self.path(name), &w.into_inner()?)
    }

    pub fn svg(&self, name: &str, doc: &svg::Document) -> anyhow::Result<()> {
        let mut text = doc.to_string();
        text.push('\n');
        write(&self.path(name), text.as_bytes())
    }
}

fn write(path: &Path, bytes: &[u8]) -> anyhow::Result<()> {
    fs::write(path, bytes).with_context(|| format!("cannot write {}", path.display()))
}
