//! Line-oriented datum files.
//!
//! ```text
//! # comments start with '#'
//! label G2
//! rank 2
//! denominator 1
//! basis            # rank rows, each a basis vector in ambient coordinates
//! 1 0
//! 0 1
//! gram             # rank rows of rationals p/q
//! 6 -3
//! -3 2
//! generators       # rank rows per generator, acting on basis coordinates
//! -1 1
//! 0 1
//! 1 0
//! 3 -1
//! ```

use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::RootDatum;
use crate::epoly::{fmt_rational, parse_rational};
use crate::error::{Error, Result};
use crate::lattice::{IntegerMatrix, RationalMatrix};

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    None,
    Basis,
    Gram,
    Generators,
}

impl RootDatum {
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut label = String::from("custom");
        let mut rank: Option<usize> = None;
        let mut denominator = BigInt::one();
        let mut basis_rows: Vec<(usize, Vec<BigInt>)> = Vec::new();
        let mut gram_rows: Vec<(usize, Vec<BigRational>)> = Vec::new();
        let mut gen_rows: Vec<(usize, Vec<BigInt>)> = Vec::new();
        let mut section = Section::None;

        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let err = |msg: String| Error::Parse { line: line_no, msg };
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut words = line.split_whitespace();
            let head = words.next().unwrap_or("");
            match head {
                "label" => {
                    label = line["label".len()..].trim().to_string();
                    section = Section::None;
                }
                "rank" => {
                    let v = words.next().and_then(|w| w.parse().ok()).ok_or_else(|| err("bad rank".into()))?;
                    rank = Some(v);
                    section = Section::None;
                }
                "denominator" => {
                    denominator = words
                        .next()
                        .and_then(|w| w.parse().ok())
                        .ok_or_else(|| err("bad denominator".into()))?;
                    section = Section::None;
                }
                "basis" => section = Section::Basis,
                "gram" => section = Section::Gram,
                "generators" => section = Section::Generators,
                _ => match section {
                    Section::None => return Err(err(format!("unexpected '{head}'"))),
                    Section::Basis | Section::Generators => {
                        let row = line
                            .split_whitespace()
                            .map(|w| w.parse::<BigInt>())
                            .collect::<std::result::Result<Vec<_>, _>>()
                            .map_err(|_| err(format!("expected integers, got '{line}'")))?;
                        if section == Section::Basis {
                            basis_rows.push((line_no, row));
                        } else {
                            gen_rows.push((line_no, row));
                        }
                    }
                    Section::Gram => {
                        let row = line
                            .split_whitespace()
                            .map(parse_rational)
                            .collect::<Option<Vec<_>>>()
                            .ok_or_else(|| err(format!("expected rationals p/q, got '{line}'")))?;
                        gram_rows.push((line_no, row));
                    }
                },
            }
        }

        let rank = rank.ok_or(Error::Parse { line: 0, msg: "missing 'rank'".into() })?;
        if basis_rows.len() != rank {
            return Err(Error::Parse { line: 0, msg: format!("basis needs {rank} rows, got {}", basis_rows.len()) });
        }
        let ambient = basis_rows.first().map_or(0, |(_, r)| r.len());
        if let Some((line, _)) = basis_rows.iter().find(|(_, r)| r.len() != ambient) {
            return Err(Error::Parse { line: *line, msg: "basis rows have different lengths".into() });
        }
        let basis = IntegerMatrix::from_columns(ambient, &basis_rows.into_iter().map(|(_, r)| r).collect::<Vec<_>>());

        if gram_rows.len() != rank {
            return Err(Error::Parse { line: 0, msg: format!("gram needs {rank} rows, got {}", gram_rows.len()) });
        }
        if let Some((line, _)) = gram_rows.iter().find(|(_, r)| r.len() != rank) {
            return Err(Error::Parse { line: *line, msg: format!("gram rows need {rank} entries") });
        }
        let gram = RationalMatrix::new(rank, rank, gram_rows.into_iter().flat_map(|(_, r)| r).collect());

        if let Some((line, _)) = gen_rows.iter().find(|(_, r)| r.len() != rank) {
            return Err(Error::Parse { line: *line, msg: format!("generator rows need {rank} entries") });
        }
        if rank > 0 && gen_rows.len() % rank != 0 {
            return Err(Error::Parse { line: 0, msg: format!("generator rows not a multiple of {rank}") });
        }
        let generators = if rank == 0 {
            Vec::new()
        } else {
            gen_rows
                .chunks(rank)
                .map(|chunk| {
                    let data = chunk.iter().flat_map(|(_, r)| r.iter().cloned()).collect();
                    IntegerMatrix::new(rank, rank, data)
                })
                .collect::<Result<Vec<_>>>()?
        };

        RootDatum::new(label, basis, denominator, generators, gram)
    }

    /// Serializes in the format accepted by [`RootDatum::parse`].
    pub fn to_datum_string(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "label {}", self.label);
        let _ = writeln!(s, "rank {}", self.rank());
        let _ = writeln!(s, "denominator {}", self.denominator);
        let _ = writeln!(s, "basis");
        for j in 0..self.rank() {
            let col: Vec<String> = self.basis.column(j).iter().map(ToString::to_string).collect();
            let _ = writeln!(s, "{}", col.join(" "));
        }
        let _ = writeln!(s, "gram");
        for i in 0..self.rank() {
            let row: Vec<String> = (0..self.rank()).map(|j| fmt_rational(&self.gram[(i, j)])).collect();
            let _ = writeln!(s, "{}", row.join(" "));
        }
        let _ = writeln!(s, "generators");
        for g in &self.generators {
            for i in 0..g.rows() {
                let row: Vec<String> = g.row(i).iter().map(ToString::to_string).collect();
                let _ = writeln!(s, "{}", row.join(" "));
            }
        }
        s
    }
}
