//! Plain-text ideal files:
//!
//! ```text
//! vars: x, y, z
//! field: fp:32003
//! x^2+y*z
//! ...
//! ```

use std::fmt;
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use gor_core::constructions::{fixture_hash, Family};
use gor_core::poly::{Ideal, PolyRing};
use gor_core::{Field, FieldSpec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealFile {
    pub vars: Vec<String>,
    pub field: FieldSpec,
    pub generators: Vec<String>,
}

impl IdealFile {
    pub fn from_family(family: &Family, field: FieldSpec) -> Self {
        IdealFile { vars: family.variables(), field, generators: family.generators() }
    }

    /// Same hash as the frozen family fixtures.
    pub fn content_hash(&self) -> String {
        fixture_hash(&self.vars, &self.generators)
    }

    /// The ideal over `field`; generators are parsed and checked for
    /// homogeneity.
    pub fn ideal<F: Field>(&self, field: F) -> gor_core::Result<Ideal<F>> {
        let ring = PolyRing::new(field, self.vars.clone())?;
        let refs: Vec<&str> = self.generators.iter().map(|s| s.as_str()).collect();
        Ideal::parse(ring, &refs)
    }
}

impl fmt::Display for IdealFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vars: {}", self.vars.join(", "))?;
        writeln!(f, "field: {}", self.field)?;
        for g in &self.generators {
            writeln!(f, "{g}")?;
        }
        Ok(())
    }
}

impl FromStr for IdealFile {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s.lines();
        let vars = lines
            .next()
            .and_then(|l| l.strip_prefix("vars:"))
            .context("line 1 must be `vars: x, y, ...`")?;
        let vars: Vec<String> = vars.split(',').map(|v| v.trim().to_string()).filter(|v| !v.is_empty()).collect();
        if vars.is_empty() {
            bail!("no variables declared");
        }
        let field = lines.next().and_then(|l| l.strip_prefix("field:")).context("line 2 must be `field: q` or `field: fp:<p>`")?;
        let field: FieldSpec = field.trim().parse()?;
        let generators: Vec<String> = lines.map(|l| l.trim().to_string()).filter(|l| !l.is_empty()).collect();
        if generators.is_empty() {
            bail!("no generators");
        }
        Ok(IdealFile { vars, field, generators })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use gor_core::PrimeField;

    #[test]
    fn round_trip_is_exact() {
        for fam in ["roos4", "cm-m3", "roos-alpha-2", "stanley", "ci-3-2-2"] {
            let fam: Family = fam.parse().unwrap();
            let file = IdealFile::from_family(&fam, FieldSpec::default());
            let text = file.to_string();
            let back: IdealFile = text.parse().unwrap();
            assert_eq!(back, file);
            assert_eq!(back.to_string(), text);
            assert_eq!(back.content_hash(), fam.fixture_hash());
            back.ideal(PrimeField::new(32003).unwrap()).unwrap();
        }
    }

    #[test]
    fn rejects_malformed_files() {
        assert!("x^2\n".parse::<IdealFile>().is_err());
        assert!("vars: x\nfield: fp:4\nx^2\n".parse::<IdealFile>().is_err());
        assert!("vars: x\nfield: q\n".parse::<IdealFile>().is_err());
        let f: IdealFile = "vars: x, y\nfield: q\nx^2+y\n".parse().unwrap();
        assert!(f.ideal(gor_core::Rationals).is_err());
    }
}
