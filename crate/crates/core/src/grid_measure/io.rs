use std::fmt::Write as _;
use std::path::Path;

use super::{Dim, GridMeasure};
use crate::error::{Error, Result};

pub const HEADER: &str = "#gridmeasure v1";

impl GridMeasure {
    /// Text form: a header line, then `level d coord0 [coord1] mass` per atom.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(32 * (self.atoms.len() + 1));
        out.push_str(HEADER);
        out.push('\n');
        for &(c, m) in &self.atoms {
            match self.dim {
                Dim::One => writeln!(out, "{} 1 {} {:.16e}", self.level, c[0], m),
                Dim::Two => writeln!(out, "{} 2 {} {} {:.16e}", self.level, c[0], c[1], m),
            }
            .expect("writing to a String cannot fail");
        }
        out
    }

    pub fn from_text(text: &str) -> Result<GridMeasure> {
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, h)) if h.trim() == HEADER => {}
            _ => {
                return Err(Error::Parse {
                    line: 1,
                    msg: format!("expected header `{HEADER}`"),
                })
            }
        }
        let mut shape: Option<(u32, Dim)> = None;
        let mut atoms = Vec::new();
        for (i, line) in lines {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: String| Error::Parse { line: i + 1, msg };
            let fields: Vec<&str> = line.split_whitespace().collect();
            let level: u32 = fields
                .first()
                .ok_or_else(|| err("empty record".into()))?
                .parse()
                .map_err(|e| err(format!("level: {e}")))?;
            let d: usize = fields
                .get(1)
                .ok_or_else(|| err("missing dimension".into()))?
                .parse()
                .map_err(|e| err(format!("dimension: {e}")))?;
            let dim = Dim::from_usize(d).map_err(|e| err(e.to_string()))?;
            if fields.len() != 3 + d {
                return Err(err(format!(
                    "expected {} fields, found {}",
                    3 + d,
                    fields.len()
                )));
            }
            match shape {
                None => shape = Some((level, dim)),
                Some(s) if s != (level, dim) => {
                    return Err(err("all atoms must share level and dimension".into()))
                }
                _ => {}
            }
            let mut coords = [0u64; 2];
            for (axis, c) in coords.iter_mut().enumerate().take(d) {
                *c = fields[2 + axis]
                    .parse()
                    .map_err(|e| err(format!("coordinate: {e}")))?;
            }
            let mass: f64 = fields[2 + d]
                .parse()
                .map_err(|e| err(format!("mass: {e}")))?;
            atoms.push((coords, mass));
        }
        let (level, dim) = shape.ok_or(Error::Parse {
            line: 1,
            msg: "no atoms".into(),
        })?;
        GridMeasure::new(dim, level, atoms)
    }

    pub fn write_to(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }

    pub fn read_from(path: &Path) -> Result<GridMeasure> {
        GridMeasure::from_text(&std::fs::read_to_string(path)?)
    }
}
