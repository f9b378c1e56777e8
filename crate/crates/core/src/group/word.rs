use std::fmt;

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: usize, inverse: bool) -> Self {
        Letter { gen, inverse }
    }

    pub fn inv(self) -> Self {
        Letter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }

    /// Column of this letter in a coset table: `2·gen` or `2·gen + 1`.
    pub fn column(self) -> usize {
        2 * self.gen + usize::from(self.inverse)
    }

    pub fn exponent(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

/// Freely reduced word in numbered generators.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn gen(g: usize) -> Self {
        Word(vec![Letter::new(g, false)])
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut w = Word::empty();
        for l in letters {
            w.push(l);
        }
        w
    }

    /// Word from signed exponents: `+g+1` for generator `g`, `-(g+1)` for
    /// its inverse.
    pub fn from_signed(xs: &[i64]) -> Self {
        Self::from_letters(xs.iter().map(|&x| {
            assert!(x != 0, "zero is not a letter");
            Letter::new(x.unsigned_abs() as usize - 1, x < 0)
        }))
    }

    /// Appends a letter, cancelling it against the last one if inverse.
    pub fn push(&mut self, l: Letter) {
        if self.0.last() == Some(&l.inv()) {
            self.0.pop();
        } else {
            self.0.push(l);
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for &l in &other.0 {
            w.push(l);
        }
        w
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|l| l.gen).max()
    }

    /// Exponent sum per generator.
    pub fn exponent_sums(&self, generators: usize) -> Vec<i64> {
        let mut v = vec![0; generators];
        for l in &self.0 {
            v[l.gen] += l.exponent();
        }
        v
    }

    /// Cyclic reduction: strips inverse pairs wrapping around the ends.
    pub fn cyclically_reduced(&self) -> Word {
        let mut s = 0;
        let mut e = self.0.len();
        while e - s >= 2 && self.0[s] == self.0[e - 1].inv() {
            s += 1;
            e -= 1;
        }
        Word(self.0[s..e].to_vec())
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> WordDisplay<'a> {
        WordDisplay { word: self, names }
    }
}

/// Default generator names: `a`…`z`, then `a1`…`z1`, `a2`, ….
pub fn generator_name(i: usize) -> String {
    let letter = (b'a' + (i % 26) as u8) as char;
    match i / 26 {
        0 => letter.to_string(),
        k => format!("{letter}{k}"),
    }
}

/// Space-separated letters, inverses upper-cased; `1` for the empty word.
pub struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.word.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            let name = &self.names[l.gen];
            if l.inverse {
                write!(f, "{}", name.to_uppercase())?;
            } else {
                write!(f, "{name}")?;
            }
        }
        Ok(())
    }
}

/// Parses `a b A c`: each token is a generator name, upper-cased for the
/// inverse. `1` alone is the empty word.
pub fn parse_word(text: &str, names: &[String]) -> Result<Word, super::GroupError> {
    let mut w = Word::empty();
    for tok in text.split_whitespace() {
        if tok == "1" {
            continue;
        }
        if let Some(g) = names.iter().position(|n| n == tok) {
            w.push(Letter::new(g, false));
            continue;
        }
        let lower = tok.to_lowercase();
        match names.iter().position(|n| *n == lower) {
            Some(g) if lower != tok => w.push(Letter::new(g, true)),
            _ => return Err(super::GroupError::UnknownGenerator(tok.to_string())),
        }
    }
    Ok(w)
}
