//! Text format for matrix groups: a `mod <n>` header, then one `a,b;c,d`
//! matrix per line. Blank lines and `#` comments are ignored.

use super::{closure, FinGroup};
use crate::error::{Error, Result};
use crate::modring::{Mat2, MAX_MODULUS};

/// Generators read from a group file, in file order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupFile {
    pub modulus: u32,
    pub generators: Vec<Mat2>,
}

impl GroupFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hno, header) = lines
            .next()
            .ok_or_else(|| Error::input("group file is empty; expected a `mod <n>` header"))?;
        let modulus = header
            .strip_prefix("mod")
            .map(str::trim)
            .and_then(|s| s.parse::<u32>().ok())
            .filter(|&n| (1..=MAX_MODULUS).contains(&n))
            .ok_or_else(|| Error::input(format!("line {hno}: expected `mod <n>` header, got `{header}`")))?;
        let mut generators = Vec::new();
        for (no, line) in lines {
            let m = Mat2::parse(line, modulus).map_err(|e| Error::input(format!("line {no}: {e}")))?;
            if !m.is_invertible() {
                return Err(Error::input(format!(
                    "line {no}: {m} is not invertible mod {modulus} (det {} is not a unit)",
                    m.det()
                )));
            }
            generators.push(m);
        }
        Ok(GroupFile { modulus, generators })
    }

    /// The generated group.
    pub fn close(&self) -> Result<FinGroup<Mat2>> {
        closure(&self.generators, self.modulus)
    }

    /// Treats the lines as a complete element list and checks it is closed.
    pub fn as_closed(&self) -> Result<FinGroup<Mat2>> {
        let g = self.close()?;
        let mut listed = self.generators.clone();
        listed.push(Mat2::identity(self.modulus));
        listed.sort_unstable();
        listed.dedup();
        if listed.len() != g.order() {
            return Err(Error::input(format!(
                "listed matrices are not closed under products ({} listed, {} generated)",
                listed.len(),
                g.order()
            )));
        }
        Ok(g)
    }
}

impl std::fmt::Display for GroupFile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "mod {}", self.modulus)?;
        for g in &self.generators {
            writeln!(f, "{g}")?;
        }
        Ok(())
    }
}
