use crate::error::{Error, Result};
use crate::permcore::{Permutation, PermutationGroup};

/// Parsed contents of a group file: `degree N` on the first non-comment
/// line, then one generator per line in cycle notation. `#` starts a comment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    pub degree: usize,
    pub generators: Vec<Permutation>,
}

impl GroupSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty group file".into()))?;
        let degree = header
            .strip_prefix("degree")
            .map(str::trim)
            .and_then(|d| d.parse::<usize>().ok())
            .filter(|&d| d >= 1)
            .ok_or_else(|| Error::Parse(format!("expected `degree N`, found {header:?}")))?;
        let generators = lines
            .map(|l| Permutation::parse(l, degree))
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupSpec { degree, generators })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("degree {}\n", self.degree);
        for g in &self.generators {
            out.push_str(&g.to_string());
            out.push('\n');
        }
        out
    }

    pub fn generate(&self, cap: usize) -> Result<PermutationGroup> {
        PermutationGroup::generate(self.degree, self.generators.clone(), cap)
    }
}
