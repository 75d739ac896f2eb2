//! Flat `key = value` measure specs.
//!
//! ```text
//! # product measure, regrouped base
//! kind = product
//! A0 = 2
//! B = 2
//! k = 2
//! J = 4
//! ```
//!
//! Product specs take `A0`, then either `B` (with optional `k`, checked
//! against `|B|`) and `J`, or `blocks` as `;`-separated group literals.
//! Circle specs take `kind = cantor` with `N`, `base`, `digits`, or
//! `kind = riesz` with `N`, `a_seq`, `n_seq`. Lists are comma-separated.
//! Unknown keys are kept for callers that need extra parameters.

use std::collections::BTreeMap;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::group::FiniteAbelianGroup;
use crate::measure::{CircleMeasureModel, ProductMeasureSpec};

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SpecFile {
    entries: BTreeMap<String, String>,
}

impl FromStr for SpecFile {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("line {}: expected key = value", lineno + 1)))?;
            let key = key.trim();
            if key.is_empty() {
                return Err(Error::Parse(format!("line {}: empty key", lineno + 1)));
            }
            if entries.insert(key.to_string(), value.trim().to_string()).is_some() {
                return Err(Error::Parse(format!("key {key}: given twice")));
            }
        }
        Ok(SpecFile { entries })
    }
}

fn parse_list<T: FromStr>(key: &str, value: &str) -> Result<Vec<T>> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| Error::Parse(format!("key {key}: cannot parse {s:?}"))))
        .collect()
}

impl SpecFile {
    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    pub fn set(&mut self, key: &str, value: &str) {
        self.entries.insert(key.to_string(), value.to_string());
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    pub fn require(&self, key: &str) -> Result<&str> {
        self.get(key).ok_or_else(|| Error::Parse(format!("key {key}: missing")))
    }

    pub fn parse<T: FromStr>(&self, key: &str) -> Result<Option<T>> {
        self.get(key)
            .map(|v| v.parse().map_err(|_| Error::Parse(format!("key {key}: cannot parse {v:?}"))))
            .transpose()
    }

    pub fn parse_required<T: FromStr>(&self, key: &str) -> Result<T> {
        self.parse(key)?.ok_or_else(|| Error::Parse(format!("key {key}: missing")))
    }

    pub fn list<T: FromStr>(&self, key: &str) -> Result<Option<Vec<T>>> {
        self.get(key).map(|v| parse_list(key, v)).transpose()
    }

    pub fn list_required<T: FromStr>(&self, key: &str) -> Result<Vec<T>> {
        self.list(key)?.ok_or_else(|| Error::Parse(format!("key {key}: missing")))
    }

    fn group(&self, key: &str) -> Result<FiniteAbelianGroup> {
        self.require(key)?
            .parse()
            .map_err(|e: Error| Error::Parse(format!("key {key}: {e}")))
    }

    pub fn measure(&self) -> Result<MeasureSpec> {
        match self.require("kind")? {
            "product" => self.product().map(MeasureSpec::Product),
            "cantor" | "riesz" => self.circle().map(MeasureSpec::Circle),
            other => Err(Error::Parse(format!("key kind: unknown value {other:?}"))),
        }
    }

    fn product(&self) -> Result<ProductMeasureSpec> {
        let a0 = self.group("A0")?;
        let with_key = |key: &'static str| move |e: Error| Error::Parse(format!("key {key}: {e}"));
        if let Some(blocks) = self.get("blocks") {
            for key in ["B", "k", "J"] {
                if self.get(key).is_some() {
                    return Err(Error::Parse(format!("key {key}: not allowed together with blocks")));
                }
            }
            let blocks = blocks
                .split(';')
                .map(|b| b.trim().parse::<FiniteAbelianGroup>().map_err(with_key("blocks")))
                .collect::<Result<Vec<_>>>()?;
            return ProductMeasureSpec::explicit(a0, blocks).map_err(with_key("blocks"));
        }
        let base = self.group("B")?;
        if let Some(k) = self.parse::<usize>("k")? {
            if k != base.order() {
                return Err(Error::Parse(format!("key k: {k} does not match |B| = {}", base.order())));
            }
        }
        let depth: usize = self.parse_required("J")?;
        ProductMeasureSpec::regrouped(a0, base, depth).map_err(with_key("J"))
    }

    fn circle(&self) -> Result<CircleMeasureModel> {
        let resolution: usize = self.parse_required("N")?;
        let model = match self.require("kind")? {
            "cantor" => CircleMeasureModel::Cantor {
                resolution,
                base: self.parse_required("base")?,
                digits: self.list_required("digits")?,
            },
            _ => {
                let coefficients: Vec<f64> = self.list_required("a_seq")?;
                let frequencies: Vec<u64> = self.list_required("n_seq")?;
                if coefficients.len() != frequencies.len() {
                    return Err(Error::Parse(format!(
                        "key n_seq: {} frequencies for {} coefficients",
                        frequencies.len(),
                        coefficients.len()
                    )));
                }
                CircleMeasureModel::Riesz { resolution, coefficients, frequencies }
            }
        };
        Ok(model)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum MeasureSpec {
    Product(ProductMeasureSpec),
    Circle(CircleMeasureModel),
}
