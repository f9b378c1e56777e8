use std::fmt;

use super::word::{generator_name, parse_word};
use super::{GroupError, Word};
use crate::homology::{FgAbGroup, IntegerMatrix};

/// Finite presentation `⟨generators | relators⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self, GroupError> {
        for r in &relators {
            if let Some(g) = r.max_generator() {
                if g >= generators.len() {
                    return Err(GroupError::UnknownGenerator(generator_name(g)));
                }
            }
        }
        Ok(Presentation {
            generators,
            relators,
        })
    }

    /// Presentation on `n` default-named generators.
    pub fn with_generators(n: usize, relators: Vec<Word>) -> Result<Self, GroupError> {
        Self::new((0..n).map(generator_name).collect(), relators)
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn parse_word(&self, text: &str) -> Result<Word, GroupError> {
        parse_word(text, &self.generators)
    }

    /// `GEN a b` and `REL …` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, GroupError> {
        let mut generators: Vec<String> = Vec::new();
        let mut rel_lines = Vec::new();
        for (no, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (head, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            match head {
                "GEN" => {
                    for g in rest.split_whitespace() {
                        if g.chars().any(|c| c.is_uppercase()) || generators.iter().any(|h| h == g) {
                            return Err(GroupError::Parse {
                                line: no + 1,
                                message: format!("bad generator name `{g}`"),
                            });
                        }
                        generators.push(g.to_string());
                    }
                }
                "REL" => rel_lines.push((no + 1, rest.to_string())),
                other => {
                    return Err(GroupError::Parse {
                        line: no + 1,
                        message: format!("unknown directive `{other}`"),
                    })
                }
            }
        }
        let mut relators = Vec::new();
        for (line, r) in rel_lines {
            relators.push(parse_word(&r, &generators).map_err(|e| GroupError::Parse {
                line,
                message: e.to_string(),
            })?);
        }
        Self::new(generators, relators)
    }

    /// Abelianization via the Smith form of the relator exponent matrix.
    pub fn abelianization(&self) -> FgAbGroup {
        let n = self.generators.len();
        let mut m = IntegerMatrix::zeros(n, self.relators.len());
        for (j, r) in self.relators.iter().enumerate() {
            for (i, e) in r.exponent_sums(n).into_iter().enumerate() {
                m[(i, j)] = e.into();
            }
        }
        FgAbGroup::cokernel(&m)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "GEN {}", self.generators.join(" "))?;
        for r in &self.relators {
            writeln!(f, "REL {}", r.display(&self.generators))?;
        }
        Ok(())
    }
}

pub fn abelianization(p: &Presentation) -> FgAbGroup {
    p.abelianization()
}
