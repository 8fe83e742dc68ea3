//! Binary on-disk cache for lambda-sieve arrays and per-prime order tables.
//!
//! Layout, all integers little-endian u64:
//!   magic "ORDTBLv1" (8 bytes) | kind | range key | record count | records
//! kind 1 = lambda sieve keyed by its limit x (records are lambda(1..=x)),
//! kind 2 = order table keyed by the prime p (records are ord(1..=p-1)).

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::orders::OrderTable;

const MAGIC: &[u8; 8] = b"ORDTBLv1";
const KIND_LAMBDA: u64 = 1;
const KIND_ORDER: u64 = 2;

fn write_records(path: &Path, kind: u64, key: u64, records: &[u64]) -> Result<()> {
    let file = File::create(path)
        .map_err(|e| Error::domain(format!("cannot create cache {}: {e}", path.display())))?;
    let mut w = BufWriter::new(file);
    let io = |e: std::io::Error| Error::domain(format!("cache write failed: {e}"));
    w.write_all(MAGIC).map_err(io)?;
    w.write_all(&kind.to_le_bytes()).map_err(io)?;
    w.write_all(&key.to_le_bytes()).map_err(io)?;
    w.write_all(&(records.len() as u64).to_le_bytes()).map_err(io)?;
    for &r in records {
        w.write_all(&r.to_le_bytes()).map_err(io)?;
    }
    w.flush().map_err(io)
}

fn read_records(path: &Path, expect_kind: u64, expect_key: u64) -> Result<Vec<u64>> {
    let file = File::open(path)
        .map_err(|e| Error::domain(format!("cannot open cache {}: {e}", path.display())))?;
    let mut r = BufReader::new(file);
    let io = |e: std::io::Error| Error::domain(format!("cache read failed: {e}"));
    let mut magic = [0u8; 8];
    r.read_exact(&mut magic).map_err(io)?;
    if &magic != MAGIC {
        return Err(Error::domain(format!(
            "{} is not an order-table cache (bad magic)",
            path.display()
        )));
    }
    let mut word = [0u8; 8];
    let mut next = |r: &mut BufReader<File>| -> Result<u64> {
        r.read_exact(&mut word).map_err(io)?;
        Ok(u64::from_le_bytes(word))
    };
    let kind = next(&mut r)?;
    let key = next(&mut r)?;
    let count = next(&mut r)?;
    if kind != expect_kind || key != expect_key {
        return Err(Error::domain(format!(
            "cache {} holds kind {kind} key {key}, wanted kind {expect_kind} key {expect_key}",
            path.display()
        )));
    }
    let mut records = Vec::with_capacity(count as usize);
    let mut buf = vec![0u8; count as usize * 8];
    r.read_exact(&mut buf).map_err(io)?;
    for chunk in buf.chunks_exact(8) {
        records.push(u64::from_le_bytes(chunk.try_into().unwrap()));
    }
    Ok(records)
}

/// Persist lambda(1..=x); `values` is the array from `lambda_sieve` (entry 0
/// unused and not stored).
pub fn write_lambda_sieve(path: &Path, x: u64, values: &[u64]) -> Result<()> {
    debug_assert_eq!(values.len() as u64, x + 1);
    write_records(path, KIND_LAMBDA, x, &values[1..])
}

/// Load a lambda sieve previously written for exactly this x. Returns the
/// usual 0-padded array of length x+1.
pub fn read_lambda_sieve(path: &Path, x: u64) -> Result<Vec<u64>> {
    let records = read_records(path, KIND_LAMBDA, x)?;
    if records.len() as u64 != x {
        return Err(Error::domain(format!(
            "cache {} truncated: {} records for limit {x}",
            path.display(),
            records.len()
        )));
    }
    let mut out = Vec::with_capacity(records.len() + 1);
    out.push(0);
    out.extend_from_slice(&records);
    Ok(out)
}

pub fn write_order_table(path: &Path, table: &OrderTable) -> Result<()> {
    let records: Vec<u64> = table.raw()[1..].iter().map(|&o| o as u64).collect();
    write_records(path, KIND_ORDER, table.p(), &records)
}

pub fn read_order_table(path: &Path, p: u64) -> Result<OrderTable> {
    let records = read_records(path, KIND_ORDER, p)?;
    if records.len() as u64 != p - 1 {
        return Err(Error::domain(format!(
            "cache {} truncated: {} records for prime {p}",
            path.display(),
            records.len()
        )));
    }
    let mut ord = Vec::with_capacity(p as usize);
    ord.push(0u32);
    ord.extend(records.iter().map(|&o| o as u32));
    Ok(OrderTable { p, ord })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orders::{lambda_sieve, order_table};

    #[test]
    fn lambda_cache_roundtrip() {
        let dir = std::env::temp_dir().join("orderstats-cache-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("lambda_100.bin");
        let lam = lambda_sieve(100).unwrap();
        write_lambda_sieve(&path, 100, &lam).unwrap();
        let back = read_lambda_sieve(&path, 100).unwrap();
        assert_eq!(&back[1..], &lam[1..]);
        // Key mismatch is rejected.
        assert!(read_lambda_sieve(&path, 200).is_err());
        std::fs::remove_file(&path).unwrap();
    }

    #[test]
    fn order_table_cache_roundtrip() {
        let dir = std::env::temp_dir().join("orderstats-cache-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("ord_97.bin");
        let t = order_table(97);
        write_order_table(&path, &t).unwrap();
        let back = read_order_table(&path, 97).unwrap();
        assert_eq!(back.raw(), t.raw());
        std::fs::remove_file(&path).unwrap();
    }

    #[test]
    fn bad_magic_rejected() {
        let dir = std::env::temp_dir().join("orderstats-cache-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("bogus.bin");
        std::fs::write(&path, b"not a cache at all").unwrap();
        assert!(read_lambda_sieve(&path, 10).is_err());
        std::fs::remove_file(&path).unwrap();
    }
}
