//! Plain-text matrix files.
//!
//! ```text
//! n m
//! row col re im
//! ...
//! ```
//!
//! The first line gives the block shape, followed by one line per entry
//! (`N² = (n·m)²` lines, zero-based indices, any order). Blank lines and
//! lines starting with `#` are ignored. Numbers are written in shortest
//! round-trip form, so parsing an emitted file reproduces the matrix exactly.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;

use crate::density::BlockShape;
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

pub fn emit_matrix(mat: &ComplexMatrix, shape: BlockShape) -> String {
    let mut out = format!("{} {}\n", shape.n(), shape.m());
    let dim = mat.dim();
    for i in 0..dim {
        for j in 0..dim {
            let z = mat[(i, j)];
            let _ = writeln!(out, "{i} {j} {} {}", z.re, z.im);
        }
    }
    out
}

pub fn parse_matrix(text: &str) -> Result<(ComplexMatrix, BlockShape)> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let bad = |line: usize, message: String| Error::MatrixFormat { line, message };

    let (line, header) = lines
        .next()
        .ok_or_else(|| bad(0, "missing \"n m\" header".into()))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(bad(line, format!("expected \"n m\", got {header:?}")));
    }
    let parse_dim = |s: &str| {
        s.parse::<usize>()
            .ok()
            .filter(|&v| v > 0)
            .ok_or_else(|| bad(line, format!("invalid block dimension {s:?}")))
    };
    let shape = BlockShape::new(parse_dim(fields[0])?, parse_dim(fields[1])?)?;
    let dim = shape.dim();

    let mut mat = ComplexMatrix::zeros(dim);
    let mut seen = vec![false; dim * dim];
    for (line, text) in lines {
        let fields: Vec<&str> = text.split_whitespace().collect();
        if fields.len() != 4 {
            return Err(bad(line, format!("expected \"row col re im\", got {text:?}")));
        }
        let index = |s: &str| {
            s.parse::<usize>()
                .ok()
                .filter(|&v| v < dim)
                .ok_or_else(|| bad(line, format!("index {s:?} outside 0..{dim}")))
        };
        let number = |s: &str| {
            s.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| bad(line, format!("invalid number {s:?}")))
        };
        let (r, c) = (index(fields[0])?, index(fields[1])?);
        if std::mem::replace(&mut seen[r * dim + c], true) {
            return Err(bad(line, format!("duplicate entry ({r}, {c})")));
        }
        mat[(r, c)] = Complex64::new(number(fields[2])?, number(fields[3])?);
    }
    if let Some(missing) = seen.iter().position(|s| !s) {
        return Err(bad(
            0,
            format!("missing entry ({}, {})", missing / dim, missing % dim),
        ));
    }
    Ok((mat, shape))
}

pub fn read_matrix_file(path: &Path) -> Result<(ComplexMatrix, BlockShape)> {
    let text = std::fs::read_to_string(path)?;
    parse_matrix(&text)
}

pub fn write_matrix_file(path: &Path, mat: &ComplexMatrix, shape: BlockShape) -> Result<()> {
    std::fs::write(path, emit_matrix(mat, shape))?;
    Ok(())
}
