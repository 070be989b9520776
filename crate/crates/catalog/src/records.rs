//! Line-oriented `key=value` records separated by blank lines. `#` starts a
//! comment line. Keys are unique within a record.

use arcmaps_core::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Record {
    /// 1-based line of the first field, for error messages.
    pub line: usize,
    pub fields: Vec<(String, String)>,
}

impl Record {
    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn require(&self, key: &str) -> Result<&str> {
        self.get(key)
            .ok_or_else(|| Error::BadParams(format!("record at line {} lacks `{key}`", self.line)))
    }
}

pub fn parse_records(text: &str) -> Result<Vec<Record>> {
    let mut out = Vec::new();
    let mut cur = Record::default();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.starts_with('#') {
            continue;
        }
        if line.is_empty() {
            if !cur.fields.is_empty() {
                out.push(std::mem::take(&mut cur));
            }
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::BadParams(format!("line {}: expected key=value", i + 1)))?;
        let (k, v) = (k.trim(), v.trim());
        if k.is_empty() || k.contains(char::is_whitespace) {
            return Err(Error::BadParams(format!("line {}: bad key `{k}`", i + 1)));
        }
        if cur.fields.is_empty() {
            cur.line = i + 1;
        }
        if cur.get(k).is_some() {
            return Err(Error::BadParams(format!("line {}: duplicate key `{k}`", i + 1)));
        }
        cur.fields.push((k.to_string(), v.to_string()));
    }
    if !cur.fields.is_empty() {
        out.push(cur);
    }
    Ok(out)
}
