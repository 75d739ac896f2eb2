//! Complex-valued functions on a finite abelian group.

use std::io::{Read, Write};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::group::{FiniteAbelianGroup, GroupElement};

/// Values indexed by group elements in lexicographic coordinate order.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupFunction {
    group: FiniteAbelianGroup,
    values: Vec<Complex64>,
}

impl GroupFunction {
    pub fn new(group: FiniteAbelianGroup, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != group.order() {
            return Err(Error::InvalidInput(format!(
                "function has {} values, group {} has order {}",
                values.len(),
                group,
                group.order()
            )));
        }
        Ok(GroupFunction { group, values })
    }

    pub fn from_real(group: FiniteAbelianGroup, values: &[f64]) -> Result<Self> {
        GroupFunction::new(group, values.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    pub fn zeros(group: &FiniteAbelianGroup) -> Self {
        GroupFunction { group: group.clone(), values: vec![Complex64::new(0.0, 0.0); group.order()] }
    }

    pub fn constant(group: &FiniteAbelianGroup, c: Complex64) -> Self {
        GroupFunction { group: group.clone(), values: vec![c; group.order()] }
    }

    pub fn delta(group: &FiniteAbelianGroup, index: usize) -> Self {
        let mut f = GroupFunction::zeros(group);
        f.values[index] = Complex64::new(1.0, 0.0);
        f
    }

    pub fn delta_at(group: &FiniteAbelianGroup, x: &GroupElement) -> Result<Self> {
        group.check(x)?;
        Ok(GroupFunction::delta(group, group.index_of(x)))
    }

    pub fn from_fn(group: &FiniteAbelianGroup, mut f: impl FnMut(&GroupElement) -> Complex64) -> Self {
        let values = group.elements().map(|x| f(&x)).collect();
        GroupFunction { group: group.clone(), values }
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn at(&self, x: &GroupElement) -> Complex64 {
        self.values[self.group.index_of(x)]
    }

    pub fn same_group(&self, other: &GroupFunction) -> Result<()> {
        if self.group == other.group {
            Ok(())
        } else {
            Err(Error::GroupMismatch { left: self.group.to_string(), right: other.group.to_string() })
        }
    }

    /// `(τ_a f)(x) = f(x - a)`.
    pub fn translate(&self, shift: usize) -> GroupFunction {
        let mut out = vec![Complex64::new(0.0, 0.0); self.values.len()];
        for (x, slot) in out.iter_mut().enumerate() {
            *slot = self.values[self.group.sub_index(x, shift)];
        }
        GroupFunction { group: self.group.clone(), values: out }
    }

    pub fn pointwise_mul(&self, other: &GroupFunction) -> Result<GroupFunction> {
        self.same_group(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect();
        Ok(GroupFunction { group: self.group.clone(), values })
    }

    pub fn sub(&self, other: &GroupFunction) -> Result<GroupFunction> {
        self.same_group(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect();
        Ok(GroupFunction { group: self.group.clone(), values })
    }

    pub fn scaled(&self, c: f64) -> GroupFunction {
        GroupFunction { group: self.group.clone(), values: self.values.iter().map(|v| v * c).collect() }
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &GroupFunction) -> Result<f64> {
        self.same_group(other)?;
        Ok(self.values.iter().zip(&other.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max))
    }

    /// Indices where `|f| > tol`.
    pub fn support(&self, tol: f64) -> Vec<usize> {
        (0..self.values.len()).filter(|&i| self.values[i].norm() > tol).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.re == 0.0 && v.im == 0.0)
    }

    /// CSV with header `index,coords,re,im`; coordinates are space-separated
    /// and floats carry 17 significant digits so the round trip is bit-exact.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(writer);
        w.write_record(["index", "coords", "re", "im"]).map_err(io_err)?;
        for (i, v) in self.values.iter().enumerate() {
            let coords: Vec<String> =
                self.group.element_at(i).coords().iter().map(|c| c.to_string()).collect();
            w.write_record([i.to_string(), coords.join(" "), fmt_f64(v.re), fmt_f64(v.im)])
                .map_err(io_err)?;
        }
        w.flush().map_err(|e| Error::Io(e.to_string()))
    }

    pub fn read_csv<R: Read>(group: &FiniteAbelianGroup, reader: R) -> Result<GroupFunction> {
        let mut r = csv::Reader::from_reader(reader);
        let headers = r.headers().map_err(io_err)?.clone();
        if headers.iter().collect::<Vec<_>>() != ["index", "coords", "re", "im"] {
            return Err(Error::Parse(format!("unexpected header {headers:?}")));
        }
        let mut values = Vec::with_capacity(group.order());
        for (row, rec) in r.records().enumerate() {
            let rec = rec.map_err(io_err)?;
            let index: usize = parse_field(&rec, 0)?;
            if index != row {
                return Err(Error::Parse(format!("row {row} carries index {index}")));
            }
            let coords = rec
                .get(1)
                .unwrap_or("")
                .split_whitespace()
                .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad coordinate {t:?}"))))
                .collect::<Result<Vec<_>>>()?;
            let x = group.element(coords)?;
            if group.index_of(&x) != index {
                return Err(Error::Parse(format!("coords of row {row} do not match its index")));
            }
            values.push(Complex64::new(parse_field(&rec, 2)?, parse_field(&rec, 3)?));
        }
        GroupFunction::new(group.clone(), values)
    }
}

/// 17 significant digits, enough for a bit-exact `f64` round trip.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

fn parse_field<T: std::str::FromStr>(rec: &csv::StringRecord, i: usize) -> Result<T> {
    let raw = rec.get(i).ok_or_else(|| Error::Parse(format!("missing column {i}")))?;
    raw.trim().parse::<T>().map_err(|_| Error::Parse(format!("bad value {raw:?} in column {i}")))
}

fn io_err(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}
