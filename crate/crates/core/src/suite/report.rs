use std::io::{self, Write};

use serde::Serialize;

use super::CongruenceReport;

/// Column order shared by both report formats.
pub const CSV_HEADER: &str = "id,p,params,t,lhs_val,lhs_unit,rhs_val,rhs_unit,status,ms";

#[derive(Serialize)]
struct Row<'a> {
    id: String,
    p: u64,
    params: String,
    t: u32,
    lhs_val: Option<i64>,
    lhs_unit: Option<u128>,
    rhs_val: Option<i64>,
    rhs_unit: Option<u128>,
    status: &'a str,
    ms: u64,
}

impl<'a> From<&'a CongruenceReport> for Row<'a> {
    fn from(r: &'a CongruenceReport) -> Self {
        Row {
            id: r.id.clone(),
            p: r.p,
            params: r.params.to_string(),
            t: r.t,
            lhs_val: r.lhs.map(|x| x.valuation),
            lhs_unit: r.lhs.map(|x| x.unit),
            rhs_val: r.rhs.map(|x| x.valuation),
            rhs_unit: r.rhs.map(|x| x.unit),
            status: r.status.as_str(),
            ms: r.ms,
        }
    }
}

impl CongruenceReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&Row::from(self)).expect("report rows serialize")
    }

    pub fn to_csv(&self) -> String {
        let opt = |x: Option<String>| x.unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.id,
            self.p,
            self.params,
            self.t,
            opt(self.lhs.map(|x| x.valuation.to_string())),
            opt(self.lhs.map(|x| x.unit.to_string())),
            opt(self.rhs.map(|x| x.valuation.to_string())),
            opt(self.rhs.map(|x| x.unit.to_string())),
            self.status,
            self.ms
        )
    }
}

/// One JSON object per line.
pub fn write_jsonl<W: Write>(mut out: W, rows: &[CongruenceReport]) -> io::Result<()> {
    for r in rows {
        writeln!(out, "{}", r.to_json())?;
    }
    Ok(())
}

pub fn write_csv<W: Write>(mut out: W, rows: &[CongruenceReport]) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in rows {
        writeln!(out, "{}", r.to_csv())?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::suite::{check, CheckId, Params};

    #[test]
    fn formats() {
        let r = check(CheckId::new(17).unwrap(), 3, &Params::new()).unwrap();
        assert_eq!(r.to_csv(), "C17,3,,2,0,5,0,5,pass,0");
        assert_eq!(
            r.to_json(),
            r#"{"id":"C17","p":3,"params":"","t":2,"lhs_val":0,"lhs_unit":5,"rhs_val":0,"rhs_unit":5,"status":"pass","ms":0}"#
        );
        let na = check(CheckId::new(1).unwrap(), 5, &Params::new()).unwrap();
        assert_eq!(na.to_csv(), "C01,5,,3,,,,,not-applicable,0");
        let mut buf = Vec::new();
        write_csv(&mut buf, &[r, na]).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap().lines().count(), 3);
    }
}
