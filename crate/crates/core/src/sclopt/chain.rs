use std::fmt;

use super::SclError;

/// A letter of a free group word: `+g` for generator `g - 1`, `-g` for its inverse.
pub type Gen = i32;

/// An integral 1-chain of cyclically reduced words over a named free basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneChain {
    pub basis: Vec<char>,
    pub terms: Vec<(i64, Vec<Gen>)>,
}

/// Free reduction followed by cyclic reduction.
pub fn cyclically_reduce(word: &[Gen]) -> Vec<Gen> {
    let mut out: Vec<Gen> = Vec::with_capacity(word.len());
    for &g in word {
        if out.last() == Some(&-g) {
            out.pop();
        } else {
            out.push(g);
        }
    }
    let (mut i, mut j) = (0, out.len());
    while j - i >= 2 && out[i] == -out[j - 1] {
        i += 1;
        j -= 1;
    }
    out[i..j].to_vec()
}

pub fn inverse(word: &[Gen]) -> Vec<Gen> {
    word.iter().rev().map(|g| -g).collect()
}

/// Whether `b` is a cyclic rotation of `a`.
pub fn is_rotation(a: &[Gen], b: &[Gen]) -> bool {
    a.len() == b.len() && (a.is_empty() || (0..a.len()).any(|r| a[r..].iter().chain(&a[..r]).eq(b.iter())))
}

struct Parser<'a> {
    text: &'a [u8],
    pos: usize,
    basis: &'a [char],
}

impl Parser<'_> {
    fn peek(&mut self) -> Option<u8> {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        self.text.get(self.pos).copied()
    }

    fn err(&self, msg: impl Into<String>) -> SclError {
        SclError::Parse { pos: self.pos, msg: msg.into() }
    }

    fn expect(&mut self, c: u8) -> Result<(), SclError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected `{}`", c as char)))
        }
    }

    fn integer(&mut self) -> Option<i64> {
        self.peek()?;
        let start = self.pos;
        if self.text[self.pos] == b'-' {
            self.pos += 1;
        }
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let s = std::str::from_utf8(&self.text[start..self.pos]).ok()?;
        match s.parse() {
            Ok(v) => Some(v),
            Err(_) => {
                self.pos = start;
                None
            }
        }
    }

    fn atom(&mut self) -> Result<Option<Vec<Gen>>, SclError> {
        let Some(c) = self.peek() else { return Ok(None) };
        let base = match c {
            b'[' => {
                self.pos += 1;
                let x = self.word()?;
                self.expect(b',')?;
                let y = self.word()?;
                self.expect(b']')?;
                let mut w = x.clone();
                w.extend(&y);
                w.extend(inverse(&x));
                w.extend(inverse(&y));
                w
            }
            b'(' => {
                self.pos += 1;
                let x = self.word()?;
                self.expect(b')')?;
                x
            }
            c if c.is_ascii_alphabetic() => {
                let lower = c.to_ascii_lowercase() as char;
                let g = self
                    .basis
                    .iter()
                    .position(|&b| b == lower)
                    .ok_or_else(|| self.err(format!("unknown letter `{}`", c as char)))?;
                self.pos += 1;
                let g = g as Gen + 1;
                vec![if c.is_ascii_lowercase() { g } else { -g }]
            }
            _ => return Ok(None),
        };
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let k = self.integer().ok_or_else(|| self.err("expected an exponent"))?;
            let unit = if k < 0 { inverse(&base) } else { base };
            return Ok(Some(unit.repeat(k.unsigned_abs() as usize)));
        }
        Ok(Some(base))
    }

    fn word(&mut self) -> Result<Vec<Gen>, SclError> {
        let mut w = Vec::new();
        while let Some(a) = self.atom()? {
            w.extend(a);
        }
        Ok(w)
    }
}

impl OneChain {
    /// Parses `k*word + word - ...`; lowercase letters are generators, uppercase their
    /// inverses, `[x,y]` is `x y x⁻¹ y⁻¹` and `(w)^k` a power.
    pub fn parse(text: &str, basis: &[char]) -> Result<Self, SclError> {
        let mut p = Parser { text: text.as_bytes(), pos: 0, basis };
        let mut terms: Vec<(i64, Vec<Gen>)> = Vec::new();
        let mut sign = 1i64;
        let mut first = true;
        loop {
            match p.peek() {
                None if first => return Err(p.err("empty chain")),
                None => break,
                Some(b'+') if !first => {
                    p.pos += 1;
                    sign = 1;
                }
                Some(b'-') if !first => {
                    p.pos += 1;
                    sign = -1;
                }
                _ if first => {}
                Some(c) => return Err(p.err(format!("unexpected `{}`", c as char))),
            }
            first = false;
            let save = p.pos;
            let mut coeff = 1i64;
            if p.peek().is_some_and(|c| c.is_ascii_digit()) {
                coeff = p.integer().ok_or_else(|| p.err("bad coefficient"))?;
                if p.peek() == Some(b'*') {
                    p.pos += 1;
                } else {
                    p.pos = save;
                    return Err(p.err("expected `*` after a coefficient"));
                }
            }
            let start = p.pos;
            let w = p.word()?;
            if p.pos == start {
                return Err(p.err("expected a word"));
            }
            let w = cyclically_reduce(&w);
            if w.is_empty() {
                return Err(SclError::TrivialTerm(text[start..p.pos].trim().to_string()));
            }
            let k = sign * coeff;
            match terms.iter_mut().find(|(_, v)| is_rotation(v, &w)) {
                Some(t) => t.0 += k,
                None => terms.push((k, w)),
            }
        }
        terms.retain(|(k, _)| *k != 0);
        if terms.is_empty() {
            return Err(SclError::ZeroChain);
        }
        Ok(OneChain { basis: basis.to_vec(), terms })
    }

    /// Reduces and merges raw terms the way [`OneChain::parse`] does.
    pub fn from_terms(basis: &[char], raw: Vec<(i64, Vec<Gen>)>) -> Result<Self, SclError> {
        let mut terms: Vec<(i64, Vec<Gen>)> = Vec::new();
        for (k, w) in raw {
            if w.iter().any(|g| *g == 0 || g.unsigned_abs() as usize > basis.len()) {
                return Err(SclError::Internal(format!("letter outside a basis of rank {}", basis.len())));
            }
            let w = cyclically_reduce(&w);
            if w.is_empty() {
                return Err(SclError::TrivialTerm(format!("{k}*<empty>")));
            }
            match terms.iter_mut().find(|(_, v)| is_rotation(v, &w)) {
                Some(t) => t.0 += k,
                None => terms.push((k, w)),
            }
        }
        terms.retain(|(k, _)| *k != 0);
        if terms.is_empty() {
            return Err(SclError::ZeroChain);
        }
        Ok(OneChain { basis: basis.to_vec(), terms })
    }

    /// Image under the homomorphism sending generator `i` to `images[i]` over `basis`.
    pub fn substitute(&self, images: &[Vec<Gen>], basis: &[char]) -> Result<Self, SclError> {
        let raw = self
            .terms
            .iter()
            .map(|(k, w)| {
                let word = w
                    .iter()
                    .flat_map(|&g| {
                        let img = &images[g.unsigned_abs() as usize - 1];
                        if g > 0 {
                            img.clone()
                        } else {
                            inverse(img)
                        }
                    })
                    .collect();
                (*k, word)
            })
            .collect();
        Self::from_terms(basis, raw)
    }

    /// Basis `a, b, c, ...` of the given rank.
    pub fn standard_basis(rank: usize) -> Vec<char> {
        (0..rank).map(|i| (b'a' + i as u8) as char).collect()
    }

    /// Weighted exponent sums; zero exactly when the chain is a boundary.
    pub fn homology_class(&self) -> Vec<i64> {
        let mut v = vec![0i64; self.basis.len()];
        for (k, w) in &self.terms {
            for &g in w {
                v[g.unsigned_abs() as usize - 1] += k * i64::from(g.signum());
            }
        }
        v
    }

    pub fn is_boundary(&self) -> bool {
        self.homology_class().iter().all(|&x| x == 0)
    }

    /// The same chain with every coefficient made positive by inverting words.
    pub fn positive_form(&self) -> Vec<(i64, Vec<Gen>)> {
        self.terms.iter().map(|(k, w)| if *k < 0 { (-k, inverse(w)) } else { (*k, w.clone()) }).collect()
    }

    /// Reinterprets the chain over a larger basis containing this one.
    pub fn include_into(&self, ambient: &[char]) -> Result<Self, SclError> {
        let map: Vec<Gen> = self
            .basis
            .iter()
            .map(|c| ambient.iter().position(|a| a == c).map(|i| i as Gen + 1).ok_or(SclError::NotSubBasis(*c)))
            .collect::<Result<_, _>>()?;
        let terms = self
            .terms
            .iter()
            .map(|(k, w)| (*k, w.iter().map(|&g| g.signum() * map[g.unsigned_abs() as usize - 1]).collect()))
            .collect();
        Ok(OneChain { basis: ambient.to_vec(), terms })
    }

    pub fn format_word(&self, w: &[Gen]) -> String {
        w.iter()
            .map(|&g| {
                let c = self.basis[g.unsigned_abs() as usize - 1];
                if g > 0 {
                    c
                } else {
                    c.to_ascii_uppercase()
                }
            })
            .collect()
    }
}

impl fmt::Display for OneChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (k, w)) in self.terms.iter().enumerate() {
            let sep = match (i, *k < 0) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            let a = k.abs();
            if a == 1 {
                write!(f, "{sep}{}", self.format_word(w))?;
            } else {
                write!(f, "{sep}{a}*{}", self.format_word(w))?;
            }
        }
        Ok(())
    }
}
