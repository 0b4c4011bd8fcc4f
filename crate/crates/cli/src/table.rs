//! Eigenvalue tables as CSV or JSON.

use std::io::Write;

use cartan_core::EigenvalueRecord;
use serde::Serialize;

use crate::numfmt::g17;

pub const CSV_HEADER: [&str; 12] =
    ["family", "r", "a", "b", "n", "p", "lambda", "alpha", "symbol", "value", "nodes", "err_estimate"];

/// One output row. `family` is the canonical domain string, e.g. `typeI:2,3`.
#[derive(Debug, Clone, Serialize)]
pub struct Row {
    pub family: String,
    pub r: u32,
    pub a: u32,
    pub b: u32,
    pub n: u32,
    pub p: u32,
    pub lambda: f64,
    pub alpha: String,
    pub symbol: String,
    pub value: f64,
    pub nodes: usize,
    pub err_estimate: f64,
}

impl From<&EigenvalueRecord> for Row {
    fn from(rec: &EigenvalueRecord) -> Self {
        let d = &rec.domain;
        Row {
            family: d.spec.to_string(),
            r: d.rank,
            a: d.a,
            b: d.b,
            n: d.dim,
            p: d.genus,
            lambda: rec.lambda,
            alpha: rec.alpha.to_string(),
            symbol: rec.symbol_name.clone(),
            value: rec.value,
            nodes: rec.nodes,
            err_estimate: rec.err_estimate,
        }
    }
}

pub fn write_csv<W: Write>(out: W, rows: &[Row]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for row in rows {
        w.write_record([
            row.family.clone(),
            row.r.to_string(),
            row.a.to_string(),
            row.b.to_string(),
            row.n.to_string(),
            row.p.to_string(),
            g17(row.lambda),
            row.alpha.clone(),
            row.symbol.clone(),
            g17(row.value),
            row.nodes.to_string(),
            g17(row.err_estimate),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json<W: Write, T: Serialize + ?Sized>(mut out: W, value: &T) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut out, value)?;
    out.write_all(b"\n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use cartan_core::{builtin_symbol, eigenvalue, Builtin, CartanDomain, MultiIndex};

    fn sample_row() -> Row {
        let d = CartanDomain::parse("typeI:2,3").unwrap();
        let psi = builtin_symbol(Builtin::Const(1.0), 2).unwrap();
        let rec = eigenvalue(&d, 6.5, &psi, &MultiIndex::new(vec![3, 1]).unwrap(), 8).unwrap();
        Row::from(&rec)
    }

    #[test]
    fn csv_layout() {
        let mut buf = Vec::new();
        write_csv(&mut buf, &[sample_row()]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "family,r,a,b,n,p,lambda,alpha,symbol,value,nodes,err_estimate");
        let row = lines.next().unwrap();
        assert!(row.starts_with("\"typeI:2,3\",2,2,1,6,5,6.5,3-1,const:1,"), "{row}");
        assert!(lines.next().is_none());
    }

    #[test]
    fn json_uses_the_csv_field_names() {
        let mut buf = Vec::new();
        write_json(&mut buf, &[sample_row()]).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        let obj = v[0].as_object().unwrap();
        let keys: Vec<&str> = obj.keys().map(String::as_str).collect();
        let mut want = CSV_HEADER.to_vec();
        want.sort_unstable();
        let mut got = keys.clone();
        got.sort_unstable();
        assert_eq!(got, want);
        assert_eq!(obj["alpha"], "3-1");
    }
}
