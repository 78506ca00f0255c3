//! Text formats for game files and strategy vectors.
//!
//! A game file is a stream of whitespace-separated tokens; `#` starts a
//! comment that runs to the end of the line. The first token names the kind:
//!
//! ```text
//! bimatrix        symmetric
//! 2 3             2
//! 1 -1 2          0 1
//! -1 1 0          1 0
//! 0 1/2 1
//! 1 0 1.5
//! ```
//!
//! `bimatrix` is followed by the row and column counts, the row player's
//! matrix, then the column player's matrix; `symmetric` by one size and one
//! square matrix. Entries are integers, fractions `p/q`, or finite decimals,
//! all read exactly.
//!
//! Strategy vectors on the command line use the same numbers separated by
//! spaces or commas, and a profile packs two vectors around a semicolon:
//! `"2/3 1/3 ; 1/3 2/3"`.

use num::{BigInt, Zero};
use std::fmt;
use symgame::game::{BimatrixGame, SymmetricGame};
use symgame::matrix::Matrix;
use symgame::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

#[derive(Debug, Clone)]
pub enum GameFile {
    Bimatrix(BimatrixGame),
    Symmetric(SymmetricGame),
}

/// Parse one number token: `p`, `-p`, `p/q`, `-p/q`, or a finite decimal.
pub fn parse_rational_token(token: &str) -> Result<Rational, String> {
    let bad = || format!("invalid number `{token}`");
    let body = token.strip_prefix('-').unwrap_or(token);
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    let value = if let Some((p, q)) = body.split_once('/') {
        if !digits(p) || !digits(q) {
            return Err(bad());
        }
        let den: BigInt = q.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(format!("zero denominator in `{token}`"));
        }
        Rational::new(p.parse().map_err(|_| bad())?, den)
    } else if let Some((whole, frac)) = body.split_once('.') {
        if !digits(whole) || !digits(frac) {
            return Err(bad());
        }
        let scale = num::pow::pow(BigInt::from(10), frac.len());
        let units: BigInt = whole.parse().map_err(|_| bad())?;
        let tail: BigInt = frac.parse().map_err(|_| bad())?;
        Rational::new(units * &scale + tail, scale)
    } else {
        if !digits(body) {
            return Err(bad());
        }
        Rational::from_integer(body.parse().map_err(|_| bad())?)
    };
    Ok(if token.starts_with('-') { -value } else { value })
}

/// Parse a comma- or space-separated list of numbers.
pub fn parse_vector(text: &str) -> Result<Vec<Rational>, String> {
    let parts: Vec<&str> = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .collect();
    if parts.is_empty() {
        return Err("empty vector".into());
    }
    parts.into_iter().map(parse_rational_token).collect()
}

/// Parse `"x-vector ; y-vector"`.
pub fn parse_profile(text: &str) -> Result<(Vec<Rational>, Vec<Rational>), String> {
    let (x, y) = text
        .split_once(';')
        .ok_or_else(|| "expected two vectors separated by `;`".to_string())?;
    if y.contains(';') {
        return Err("expected exactly one `;`".into());
    }
    Ok((parse_vector(x)?, parse_vector(y)?))
}

struct Cursor<'a> {
    tokens: Vec<(usize, &'a str)>,
    pos: usize,
    last_line: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        let tokens: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .flat_map(|(i, line)| {
                let body = line.split('#').next().unwrap_or("");
                body.split_whitespace().map(move |tok| (i + 1, tok))
            })
            .collect();
        let last_line = text.lines().count().max(1);
        Cursor {
            tokens,
            pos: 0,
            last_line,
        }
    }

    fn next(&mut self, expected: &str) -> Result<(usize, &'a str), ParseError> {
        match self.tokens.get(self.pos) {
            Some(&(line, tok)) => {
                self.pos += 1;
                Ok((line, tok))
            }
            None => Err(ParseError {
                line: self.last_line,
                message: format!("expected {expected}, found end of file"),
            }),
        }
    }

    fn dimension(&mut self, what: &str) -> Result<usize, ParseError> {
        let (line, tok) = self.next(what)?;
        match tok.parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(ParseError {
                line,
                message: format!("expected a positive {what}, found `{tok}`"),
            }),
        }
    }

    fn entry(&mut self) -> Result<Rational, ParseError> {
        let (line, tok) = self.next("a matrix entry")?;
        parse_rational_token(tok).map_err(|message| ParseError { line, message })
    }

    fn matrix(&mut self, rows: usize, cols: usize) -> Result<Matrix, ParseError> {
        let mut data = Vec::with_capacity(rows);
        for _ in 0..rows {
            let mut row = Vec::with_capacity(cols);
            for _ in 0..cols {
                row.push(self.entry()?);
            }
            data.push(row);
        }
        Matrix::from_rows(data).map_err(|e| ParseError {
            line: self.last_line,
            message: e.to_string(),
        })
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.tokens.get(self.pos) {
            None => Ok(()),
            Some(&(line, tok)) => Err(ParseError {
                line,
                message: format!("unexpected trailing token `{tok}`"),
            }),
        }
    }
}

pub fn parse_game(text: &str) -> Result<GameFile, ParseError> {
    let mut cur = Cursor::new(text);
    let (line, kind) = cur.next("a game kind (`bimatrix` or `symmetric`)")?;
    let wrap = |line: usize| move |e: symgame::Error| ParseError {
        line,
        message: e.to_string(),
    };
    match kind {
        "bimatrix" => {
            let rows = cur.dimension("row count")?;
            let cols = cur.dimension("column count")?;
            let a = cur.matrix(rows, cols)?;
            let b = cur.matrix(rows, cols)?;
            cur.finish()?;
            Ok(GameFile::Bimatrix(
                BimatrixGame::new(a, b).map_err(wrap(line))?,
            ))
        }
        "symmetric" => {
            let n = cur.dimension("size")?;
            let a = cur.matrix(n, n)?;
            cur.finish()?;
            Ok(GameFile::Symmetric(
                SymmetricGame::new(a).map_err(wrap(line))?,
            ))
        }
        other => Err(ParseError {
            line,
            message: format!("unknown game kind `{other}`, expected `bimatrix` or `symmetric`"),
        }),
    }
}
