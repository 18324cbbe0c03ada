//! Groups read from a Cayley table in CSV form.

use std::path::Path;

use crate::error::{Error, Result};

/// Reads `n` rows of `n` comma-separated 0-based indices, entry `(i, j)`
/// being `i * j`.
pub(crate) fn read_table(path: &Path) -> Result<(usize, Vec<u32>)> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| match e.into_kind() {
            csv::ErrorKind::Io(source) => Error::Io {
                path: path.to_path_buf(),
                source,
            },
            other => Error::NotAGroup(format!("{other:?}")),
        })?;
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| Error::NotAGroup(e.to_string()))?;
        let row = record
            .iter()
            .map(|s| {
                s.parse::<u32>()
                    .map_err(|_| Error::NotAGroup(format!("bad entry `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    parse_rows(rows)
}

pub(crate) fn parse_rows(rows: Vec<Vec<u32>>) -> Result<(usize, Vec<u32>)> {
    let n = rows.len();
    if n == 0 {
        return Err(Error::NotAGroup("empty table".into()));
    }
    let mut table = Vec::with_capacity(n * n);
    for (i, row) in rows.into_iter().enumerate() {
        if row.len() != n {
            return Err(Error::NotAGroup(format!(
                "row {i} has {} entries, expected {n}",
                row.len()
            )));
        }
        if let Some(&bad) = row.iter().find(|&&x| x as usize >= n) {
            return Err(Error::NotAGroup(format!("entry {bad} out of range in row {i}")));
        }
        table.extend(row);
    }
    Ok((n, table))
}

/// Relabels so the identity becomes index 0 by swapping it with the element
/// currently at 0. Returns the table and the original index of each new index.
pub(crate) fn normalize_identity(n: usize, table: Vec<u32>) -> Result<(Vec<u32>, Vec<usize>)> {
    let is_identity = |e: usize| {
        (0..n).all(|a| table[e * n + a] as usize == a && table[a * n + e] as usize == a)
    };
    let e = (0..n)
        .find(|&e| is_identity(e))
        .ok_or_else(|| Error::NotAGroup("no identity element".into()))?;
    let swap = |x: usize| {
        if x == e {
            0
        } else if x == 0 {
            e
        } else {
            x
        }
    };
    let mut out = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            out[swap(a) * n + swap(b)] = swap(table[a * n + b] as usize) as u32;
        }
    }
    let original = (0..n).map(swap).collect();
    Ok((out, original))
}
