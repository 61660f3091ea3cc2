//! Finitely generated ℂ[∂]-submodules of `ℚ[∂]^F ⊕ ℚ^T`, where the `T`
//! torsion coordinates belong to generators with `∂g = 0`.
//!
//! Canonical form is a one-sided Hermite echelon over ℚ[∂] on the free
//! columns (monic pivots, entries above a pivot reduced modulo it) followed by
//! a reduced row echelon form over ℚ on the torsion coordinates of the rows
//! whose free part vanished. Torsion coordinates of pivot rows are reduced
//! against those torsion rows, which makes the form unique.

use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::arith::{RatPoly, Rational, Scalar};
use crate::conformal::{ConformalElement, Generators};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("submodules live in different ambient modules")]
    AmbientMismatch,
    #[error("element has parameter-dependent coefficients; specialize parameters first")]
    Parametric,
    #[error("element refers to generator #{0} outside the ambient module")]
    UnknownGenerator(usize),
}

/// Row vector: one ∂-polynomial per generator column. Torsion columns hold
/// constants only.
type Row = Vec<RatPoly>;

/// A submodule in canonical echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Submodule {
    ambient: Generators,
    rows: Vec<Row>,
    /// Pivot column of each leading row that has a free pivot.
    pivots: Vec<usize>,
}

impl Submodule {
    pub fn zero(ambient: &Generators) -> Self {
        Submodule {
            ambient: ambient.clone(),
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    /// The whole ambient module.
    pub fn full(ambient: &Generators) -> Self {
        let gens: Vec<_> = (0..ambient.len()).map(|i| ambient.generator(i)).collect();
        canonical_form(ambient, &gens).expect("generators are parameter-free")
    }

    pub fn ambient(&self) -> &Generators {
        &self.ambient
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// Canonical rows as conformal elements.
    pub fn rows(&self) -> Vec<ConformalElement> {
        self.rows.iter().map(row_to_element).collect()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// `(pivot column, pivot degree)` for the free part, then the torsion
    /// pivot columns. Strictly grows along a strictly ascending chain.
    pub fn profile(&self) -> Vec<(usize, usize)> {
        self.rows
            .iter()
            .enumerate()
            .map(|(k, r)| match self.pivots.get(k) {
                Some(&c) => (c, r[c].degree().unwrap_or(0)),
                None => (leading_column(r).unwrap_or(0), 0),
            })
            .collect()
    }

    fn check_ambient(&self, other: &Generators) -> Result<(), LatticeError> {
        if &self.ambient == other {
            Ok(())
        } else {
            Err(LatticeError::AmbientMismatch)
        }
    }

    /// Membership by division against the pivots.
    pub fn contains(&self, e: &ConformalElement) -> Result<bool, LatticeError> {
        let mut v = element_to_row(&self.ambient, e)?;
        self.reduce(&mut v);
        Ok(v.iter().all(RatPoly::is_zero))
    }

    fn reduce(&self, v: &mut Row) {
        for (k, &c) in self.pivots.iter().enumerate() {
            if v[c].is_zero() {
                continue;
            }
            let (q, _) = v[c].div_rem(&self.rows[k][c]);
            sub_multiple(&self.ambient, v, &self.rows[k], &q);
        }
        reduce_torsion(&self.ambient, v, &self.rows[self.pivots.len()..]);
    }

    pub fn sum(&self, other: &Submodule) -> Result<Submodule, LatticeError> {
        self.check_ambient(&other.ambient)?;
        let rows = self.rows.iter().chain(other.rows.iter()).cloned().collect();
        Ok(echelonize(&self.ambient, rows))
    }

    pub fn equals(&self, other: &Submodule) -> Result<bool, LatticeError> {
        self.check_ambient(&other.ambient)?;
        Ok(self.rows == other.rows)
    }

    /// Every row of `other` lies in `self`.
    pub fn includes(&self, other: &Submodule) -> Result<bool, LatticeError> {
        self.check_ambient(&other.ambient)?;
        for r in &other.rows {
            let mut v = r.clone();
            self.reduce(&mut v);
            if !v.iter().all(RatPoly::is_zero) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn render(&self) -> String {
        if self.rows.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<_> = self.rows().iter().map(|e| self.ambient.render(e)).collect();
        format!("<{}>", parts.join(", "))
    }
}

impl fmt::Display for Submodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

pub fn canonical_form(
    ambient: &Generators,
    generators: &[ConformalElement],
) -> Result<Submodule, LatticeError> {
    let rows = generators
        .iter()
        .map(|e| element_to_row(ambient, e))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(echelonize(ambient, rows))
}

pub fn contains(m: &Submodule, e: &ConformalElement) -> Result<bool, LatticeError> {
    m.contains(e)
}

pub fn module_sum(m: &Submodule, n: &Submodule) -> Result<Submodule, LatticeError> {
    m.sum(n)
}

pub fn module_equal(m: &Submodule, n: &Submodule) -> Result<bool, LatticeError> {
    m.equals(n)
}

fn element_to_row(ambient: &Generators, e: &ConformalElement) -> Result<Row, LatticeError> {
    let mut row = vec![RatPoly::zero(); ambient.len()];
    for g in e.generators() {
        if g >= ambient.len() {
            return Err(LatticeError::UnknownGenerator(g));
        }
        let mut coeffs = Vec::new();
        for (h, d, c) in e.terms() {
            if h != g {
                continue;
            }
            let c = c.as_rational().ok_or(LatticeError::Parametric)?;
            if coeffs.len() <= d {
                coeffs.resize(d + 1, Rational::zero());
            }
            coeffs[d] = c;
        }
        if ambient.is_torsion(g) {
            coeffs.truncate(1);
        }
        row[g] = RatPoly::new(coeffs);
    }
    Ok(row)
}

fn row_to_element(row: &Row) -> ConformalElement {
    let mut e = ConformalElement::zero();
    for (g, p) in row.iter().enumerate() {
        for (d, c) in p.coeffs().iter().enumerate() {
            e.add_term(g, d, &Scalar::from(c.clone()));
        }
    }
    e
}

fn leading_column(r: &Row) -> Option<usize> {
    r.iter().position(|p| !p.is_zero())
}

/// `v −= q(∂) · r`, where `q` acts on torsion coordinates through `q(0)`.
fn sub_multiple(ambient: &Generators, v: &mut Row, r: &Row, q: &RatPoly) {
    if q.is_zero() {
        return;
    }
    let q0 = q.constant_term();
    for (c, entry) in r.iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        if ambient.is_torsion(c) {
            v[c] = &v[c] - &entry.scale(&q0);
        } else {
            v[c] = &v[c] - &(q * entry);
        }
    }
}

fn scale_row(r: &Row, c: &Rational) -> Row {
    r.iter().map(|p| p.scale(c)).collect()
}

fn echelonize(ambient: &Generators, mut rows: Vec<Row>) -> Submodule {
    rows.retain(|r| r.iter().any(|p| !p.is_zero()));
    let n = ambient.len();
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in (0..n).filter(|&c| !ambient.is_torsion(c)) {
        loop {
            // the row below `top` with the lowest nonzero degree in `col`
            let best = (top..rows.len())
                .filter(|&k| !rows[k][col].is_zero())
                .min_by_key(|&k| rows[k][col].degree());
            let Some(best) = best else { break };
            rows.swap(top, best);
            let mut done = true;
            for k in top + 1..rows.len() {
                if rows[k][col].is_zero() {
                    continue;
                }
                let (q, rem) = rows[k][col].div_rem(&rows[top][col]);
                let pivot_row = rows[top].clone();
                sub_multiple(ambient, &mut rows[k], &pivot_row, &q);
                if !rem.is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if top < rows.len() && !rows[top][col].is_zero() {
            let lead = rows[top][col].leading().cloned().expect("nonzero");
            rows[top] = scale_row(&rows[top], &lead.recip());
            pivots.push(col);
            top += 1;
        }
    }

    // rows below the pivots have vanishing free part
    let torsion = torsion_rref(ambient, rows.split_off(top));

    // reduce entries above each free pivot
    for k in 0..pivots.len() {
        let c = pivots[k];
        for i in 0..k {
            let (q, _) = rows[i][c].div_rem(&rows[k][c]);
            let pivot_row = rows[k].clone();
            sub_multiple(ambient, &mut rows[i], &pivot_row, &q);
        }
    }
    for r in rows.iter_mut() {
        reduce_torsion(ambient, r, &torsion);
    }
    rows.extend(torsion);
    Submodule {
        ambient: ambient.clone(),
        rows,
        pivots,
    }
}

fn torsion_rref(ambient: &Generators, rows: Vec<Row>) -> Vec<Row> {
    let mut rows: Vec<Row> = rows
        .into_iter()
        .filter(|r| r.iter().any(|p| !p.is_zero()))
        .collect();
    let mut out: Vec<Row> = Vec::new();
    for col in (0..ambient.len()).filter(|&c| ambient.is_torsion(c)) {
        let Some(k) = rows.iter().position(|r| !r[col].is_zero()) else {
            continue;
        };
        let r = rows.swap_remove(k);
        let pivot = scale_row(&r, &r[col].constant_term().recip());
        for other in rows.iter_mut().chain(out.iter_mut()) {
            let f = other[col].constant_term();
            if !f.is_zero() {
                let q = RatPoly::constant(f);
                sub_multiple(ambient, other, &pivot, &q);
            }
        }
        out.push(pivot);
    }
    out
}

fn reduce_torsion(ambient: &Generators, v: &mut Row, torsion: &[Row]) {
    for t in torsion {
        let Some(col) = leading_column(t) else { continue };
        let f = v[col].constant_term();
        if !f.is_zero() {
            sub_multiple(ambient, v, t, &RatPoly::constant(f));
        }
    }
}
