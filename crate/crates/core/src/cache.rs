//! On-disk cache of KL polynomials.
//!
//! The file is plain text, one record per line:
//!
//! ```text
//! # bruhat-forge kl-cache v1 A2~
//! e 1201 1,1
//! 0 1201 1
//! ```
//!
//! Each record is `x y c0,c1,...` with `P_{x,y}(q) = Σ cᵢqⁱ`; the identity is
//! written `e`. Files only ever grow: [`KlCache::save`] keeps the records
//! already on disk, in order, and appends the new ones, so caches from
//! parallel runs can be concatenated (minus the header) and reloaded.

use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;

use crate::hecke::{kl_basis, preload_kl_basis, HeckeElement};
use crate::laurent::QPoly;
use crate::weyl::{lower_interval, Element};
use crate::{Error, Result};

pub const HEADER: &str = "# bruhat-forge kl-cache v1 A2~";

/// Environment variable naming the cache file used by the command line tool.
pub const CACHE_ENV: &str = "BRUHAT_FORGE_CACHE";

pub fn cache_path_from_env() -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV)
        .filter(|p| !p.is_empty())
        .map(PathBuf::from)
}

#[derive(Clone, Debug, Default)]
pub struct KlCache {
    order: Vec<(Element, Element)>,
    records: HashMap<(Element, Element), QPoly>,
}

impl KlCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn get(&self, x: &Element, y: &Element) -> Option<&QPoly> {
        self.records.get(&(*x, *y))
    }

    /// Records in insertion order.
    pub fn iter(&self) -> impl Iterator<Item = (&Element, &Element, &QPoly)> {
        self.order.iter().map(|k| (&k.0, &k.1, &self.records[k]))
    }

    /// Adds a record. Returns `false` if an identical record was already
    /// present; a conflicting one is an error.
    pub fn insert(&mut self, x: &Element, y: &Element, p: QPoly) -> Result<bool> {
        let key = (*x, *y);
        match self.records.get(&key) {
            Some(old) if *old == p => Ok(false),
            Some(old) => Err(Error::Cache(format!(
                "conflicting records for ({x}, {y}): {old} and {p}"
            ))),
            None => {
                self.order.push(key);
                self.records.insert(key, p);
                Ok(true)
            }
        }
    }

    /// Records `P_{x,y}` for every `x ≤ y`; returns the number of new records.
    pub fn record_basis(&mut self, y: &Element) -> Result<usize> {
        self.record_element(y, &*kl_basis(y)?)
    }

    /// Same as [`KlCache::record_basis`] with `H̲_y` supplied by the caller.
    pub fn record_element(&mut self, y: &Element, h: &HeckeElement) -> Result<usize> {
        let mut added = 0;
        for x in lower_interval(y).iter() {
            let p = h.coefficient(x).to_q(y.length() - x.length())?;
            added += usize::from(self.insert(x, y, p)?);
        }
        Ok(added)
    }

    pub fn merge(&mut self, other: &KlCache) -> Result<usize> {
        let mut added = 0;
        for (x, y, p) in other.iter() {
            added += usize::from(self.insert(x, y, p.clone())?);
        }
        Ok(added)
    }

    /// Seeds the in-memory canonical basis table with every `H̲_y` whose
    /// lower interval is fully present. Returns the number of tops seeded.
    pub fn preload(&self) -> usize {
        let mut tops: Vec<Element> = self.order.iter().map(|k| k.1).collect();
        tops.sort_by_key(|y| y.shortlex_key());
        tops.dedup();
        let mut seeded = 0;
        for y in tops {
            let below = lower_interval(&y);
            let mut h = HeckeElement::zero();
            let complete = below.iter().all(|x| match self.get(x, &y) {
                Some(p) => {
                    h.add_term(x, &p.to_laurent(y.length() - x.length()));
                    true
                }
                None => false,
            });
            if complete {
                preload_kl_basis(&y, h);
                seeded += 1;
            }
        }
        seeded
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        match lines.next() {
            Some(h) if h.trim_end() == HEADER => {}
            other => {
                return Err(Error::Cache(format!(
                    "expected header {HEADER:?}, found {:?}",
                    other.unwrap_or("")
                )))
            }
        }
        let mut cache = KlCache::new();
        for (i, line) in lines.enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (x, y, p) = parse_record(line).map_err(|e| Error::Cache(format!("line {}: {e}", i + 2)))?;
            cache.insert(&x, &y, p)?;
        }
        Ok(cache)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&fs::read_to_string(path)?)
    }

    /// Loads `path` if it exists, otherwise starts empty.
    pub fn open(path: &Path) -> Result<Self> {
        if path.exists() {
            Self::load(path)
        } else {
            Ok(Self::new())
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(16 * self.len() + HEADER.len());
        out.push_str(HEADER);
        out.push('\n');
        for (x, y, p) in self.iter() {
            out.push_str(&format_record(x, y, p));
            out.push('\n');
        }
        out
    }

    /// Appends the records not yet in `path`, creating it if needed. Fails
    /// without writing if the file disagrees with this cache.
    pub fn save(&self, path: &Path) -> Result<usize> {
        let on_disk = Self::open(path)?;
        let mut fresh = Vec::new();
        for (x, y, p) in self.iter() {
            match on_disk.get(x, y) {
                Some(old) if old == p => {}
                Some(old) => {
                    return Err(Error::Cache(format!(
                        "{} holds {old} for ({x}, {y}), not {p}",
                        path.display()
                    )))
                }
                None => fresh.push(format_record(x, y, p)),
            }
        }
        let mut file = fs::OpenOptions::new().create(true).append(true).open(path)?;
        if file.metadata()?.len() == 0 {
            writeln!(file, "{HEADER}")?;
        }
        for line in &fresh {
            writeln!(file, "{line}")?;
        }
        Ok(fresh.len())
    }
}

fn word_text(w: &Element) -> String {
    if w.is_identity() {
        "e".to_string()
    } else {
        w.to_string()
    }
}

fn parse_word(s: &str) -> Result<Element> {
    if s == "e" {
        Ok(Element::identity())
    } else {
        Element::parse(s)
    }
}

fn format_record(x: &Element, y: &Element, p: &QPoly) -> String {
    let coeffs: Vec<String> = if p.is_zero() {
        vec!["0".into()]
    } else {
        p.coeffs().iter().map(|c| c.to_string()).collect()
    };
    format!("{} {} {}", word_text(x), word_text(y), coeffs.join(","))
}

fn parse_record(line: &str) -> Result<(Element, Element, QPoly)> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    let [x, y, coeffs] = fields[..] else {
        return Err(Error::Cache(format!("expected three fields in {line:?}")));
    };
    let coeffs = coeffs
        .split(',')
        .map(|c| c.parse::<BigInt>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|e| Error::Cache(format!("bad coefficient in {line:?}: {e}")))?;
    Ok((parse_word(x)?, parse_word(y)?, QPoly::from_coeffs(coeffs)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(s: &str) -> Element {
        Element::parse(s).unwrap()
    }

    #[test]
    fn record_format() {
        let p = QPoly::one_plus_q();
        assert_eq!(format_record(&Element::identity(), &el("1234"), &p), "e 1201 1,1");
        let (x, y, q) = parse_record("e 1201 1,1").unwrap();
        assert_eq!((x, y, q), (Element::identity(), el("1234"), p));
        assert!(parse_record("e 1230").is_err());
        assert!(parse_record("e 1230 1,x").is_err());
        assert!(parse_record("x 1230 1").is_err());
    }

    #[test]
    fn header_is_required() {
        assert!(KlCache::parse("e e 1\n").is_err());
        assert!(KlCache::parse("# bruhat-forge kl-cache v2 A2~\n").is_err());
        assert!(KlCache::parse(&format!("{HEADER}\n")).unwrap().is_empty());
    }

    #[test]
    fn conflicts_are_rejected() {
        let mut c = KlCache::new();
        let y = el("121");
        assert!(c.insert(&Element::identity(), &y, QPoly::one()).unwrap());
        assert!(!c.insert(&Element::identity(), &y, QPoly::one()).unwrap());
        assert!(c.insert(&Element::identity(), &y, QPoly::one_plus_q()).is_err());
        let text = format!("{HEADER}\ne 121 1\ne 121 1,1\n");
        assert!(KlCache::parse(&text).is_err());
    }

    #[test]
    fn text_round_trip() {
        let mut c = KlCache::new();
        for y in ["1234", "1234321", "0121021"] {
            c.record_basis(&el(y)).unwrap();
        }
        let back = KlCache::parse(&c.to_text()).unwrap();
        assert_eq!(back.len(), c.len());
        for (x, y, p) in c.iter() {
            assert_eq!(back.get(x, y), Some(p));
        }
        assert_eq!(back.get(&Element::identity(), &el("1234")), Some(&QPoly::one_plus_q()));
        assert_eq!(back.get(&Element::identity(), &el("1234321")), Some(&QPoly::one_plus_q()));
    }
}
