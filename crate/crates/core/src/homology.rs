//! Homology of N-complexes: the cells `_pH_i`, the maps `i_*` and `d_*`
//! between them, and the total complex they assemble into.

use std::collections::BTreeMap;

use crate::complex::{ComplexError, NComplex};
use crate::linalg::{induced_map, subquotient, LinalgError, Matrix, Subquotient};

/// `_pH_i = Ker(d^p : C_i → C_{i-p}) / Im(d^{N-p} : C_{i+N-p} → C_i)` for `1 ≤ p ≤ N`.
pub fn homology(c: &NComplex, p: u32, i: i64) -> Result<Subquotient, ComplexError> {
    let n = c.order();
    if p == 0 || p > n {
        return Err(ComplexError::InvalidArgument(format!("p must be in 1..={n}, got {p}")));
    }
    let ker = c.power_map(i, p).kernel_basis();
    let im = c.power_map(i + (n - p) as i64, n - p).image_basis();
    Ok(subquotient(ker, im)?)
}

/// All cells `_pH_i` for `1 ≤ p ≤ N-1` with the horizontal maps
/// `i_* : _pH_i → _{p+1}H_i` and vertical maps `d_* : _pH_i → _{p-1}H_{i-1}`.
///
/// Cells are computed for every degree in the support of the complex; maps
/// into cells outside that range are zero and are not stored.
#[derive(Debug, Clone)]
pub struct HomologyDiagram {
    order: u32,
    cells: BTreeMap<(u32, i64), Subquotient>,
    i_star: BTreeMap<(u32, i64), Matrix>,
    d_star: BTreeMap<(u32, i64), Matrix>,
}

pub fn homology_diagram(c: &NComplex) -> Result<HomologyDiagram, ComplexError> {
    let n = c.order();
    let mut cells = BTreeMap::new();
    if let Some((lo, hi)) = c.support() {
        for p in 1..n {
            for i in lo..=hi {
                cells.insert((p, i), homology(c, p, i)?);
            }
        }
    }
    let mut i_star = BTreeMap::new();
    let mut d_star = BTreeMap::new();
    for (&(p, i), cell) in &cells {
        if let Some(next) = cells.get(&(p + 1, i)) {
            let id = Matrix::identity(c.field(), c.dim(i));
            i_star.insert((p, i), induced_map(&id, cell, next)?);
        }
        if p >= 2 {
            if let Some(below) = cells.get(&(p - 1, i - 1)) {
                d_star.insert((p, i), induced_map(&c.diff(i), cell, below)?);
            }
        }
    }
    Ok(HomologyDiagram { order: n, cells, i_star, d_star })
}

impl HomologyDiagram {
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn cells(&self) -> &BTreeMap<(u32, i64), Subquotient> {
        &self.cells
    }

    pub fn cell(&self, p: u32, i: i64) -> Option<&Subquotient> {
        self.cells.get(&(p, i))
    }

    /// Dimension of `_pH_i`, zero outside the computed range.
    pub fn dim(&self, p: u32, i: i64) -> usize {
        self.cell(p, i).map_or(0, Subquotient::dim)
    }

    pub fn i_star(&self) -> &BTreeMap<(u32, i64), Matrix> {
        &self.i_star
    }

    pub fn d_star(&self) -> &BTreeMap<(u32, i64), Matrix> {
        &self.d_star
    }

    pub fn is_zero(&self) -> bool {
        self.cells.values().all(|c| c.dim() == 0)
    }

    /// Compares `d_* ∘ i_*` with `i_* ∘ d_*` on `_pH_i → _pH_{i-1}` wherever
    /// both composites are defined; returns the first cell where they differ.
    pub fn first_noncommuting_square(&self) -> Option<(u32, i64)> {
        for &(p, i) in self.cells.keys() {
            let path_a = match (self.i_star.get(&(p, i)), self.d_star.get(&(p + 1, i))) {
                (Some(a), Some(b)) => b.mul(a),
                _ => continue,
            };
            let path_b = match (self.d_star.get(&(p, i)), self.i_star.get(&(p - 1, i - 1))) {
                (Some(a), Some(b)) => b.mul(a),
                _ => continue,
            };
            if path_a != path_b {
                return Some((p, i));
            }
        }
        None
    }
}

/// The `(N-1)`-complex `H_m = ⊕_{2i-p=m} _pH_i` with `D = i_* + d_*`.
///
/// Within each `H_m` the summands are ordered by `(p, i)`.
#[derive(Debug, Clone)]
pub struct TotalHomology {
    pub complex: NComplex,
    /// For each total degree, the summands `(p, i, dim)` in block order.
    pub blocks: BTreeMap<i64, Vec<(u32, i64, usize)>>,
}

impl TotalHomology {
    /// Position of `(p, i)` inside `H_{2i-p}`.
    fn offset(&self, p: u32, i: i64) -> Option<usize> {
        let mut off = 0;
        for &(bp, bi, d) in self.blocks.get(&(2 * i - p as i64))? {
            if (bp, bi) == (p, i) {
                return Some(off);
            }
            off += d;
        }
        None
    }

    /// Dimensions of `H_m` listed from the highest total degree down.
    pub fn dims_descending(&self) -> Vec<(i64, usize)> {
        self.blocks.iter().rev().map(|(&m, b)| (m, b.iter().map(|x| x.2).sum())).collect()
    }

    /// True when the total complex has no homology as an ordinary complex
    /// (only meaningful when the total complex has order 2).
    pub fn is_exact_sequence(&self) -> Result<bool, ComplexError> {
        let c = &self.complex;
        let Some((lo, hi)) = c.support() else { return Ok(true) };
        for m in lo..=hi {
            for p in 1..c.order() {
                if homology(c, p, m)?.dim() != 0 {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

pub fn total_homology(c: &NComplex) -> Result<TotalHomology, ComplexError> {
    let diagram = homology_diagram(c)?;
    total_from_diagram(c, &diagram)
}

pub fn total_from_diagram(c: &NComplex, diagram: &HomologyDiagram) -> Result<TotalHomology, ComplexError> {
    let n = c.order();
    if n < 2 {
        return Err(ComplexError::InvalidArgument("total homology needs N >= 2".into()));
    }
    let mut blocks: BTreeMap<i64, Vec<(u32, i64, usize)>> = BTreeMap::new();
    for (&(p, i), cell) in diagram.cells() {
        blocks.entry(2 * i - p as i64).or_default().push((p, i, cell.dim()));
    }
    let mut total = TotalHomology { complex: NComplex::assemble(c.field(), n - 1, BTreeMap::new(), BTreeMap::new())?, blocks };
    let dims: BTreeMap<i64, usize> = total.blocks.iter().map(|(&m, b)| (m, b.iter().map(|x| x.2).sum())).collect();
    let dim = |m: i64| dims.get(&m).copied().unwrap_or(0);
    let mut diffs: BTreeMap<i64, Matrix> = BTreeMap::new();
    let place = |diffs: &mut BTreeMap<i64, Matrix>, total: &TotalHomology, src: (u32, i64), dst: (u32, i64), block: &Matrix| {
        let m = 2 * src.1 - src.0 as i64;
        let entry = diffs.entry(m).or_insert_with(|| Matrix::zeros(c.field(), dim(m - 1), dim(m)));
        let (Some(r0), Some(c0)) = (total.offset(dst.0, dst.1), total.offset(src.0, src.1)) else { return };
        entry.set_block(r0, c0, block);
    };
    for (&(p, i), block) in diagram.i_star() {
        place(&mut diffs, &total, (p, i), (p + 1, i), block);
    }
    for (&(p, i), block) in diagram.d_star() {
        place(&mut diffs, &total, (p, i), (p - 1, i - 1), block);
    }
    total.complex = NComplex::assemble(c.field(), n - 1, dims, diffs)?;
    Ok(total)
}

/// True iff every `_pH_i` vanishes for `1 ≤ p ≤ N`.
pub fn is_n_exact(c: &NComplex) -> Result<bool, ComplexError> {
    let Some((lo, hi)) = c.support() else { return Ok(true) };
    for p in 1..=c.order() {
        for i in lo..=hi {
            if homology(c, p, i)?.dim() != 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Dimensions of `_NH_i`, which vanish for every complex; kept as a diagnostic.
pub fn top_cells(c: &NComplex) -> Result<BTreeMap<i64, usize>, ComplexError> {
    let Some((lo, hi)) = c.support() else { return Ok(BTreeMap::new()) };
    (lo..=hi).map(|i| Ok((i, homology(c, c.order(), i)?.dim()))).collect()
}

/// The total homology of the 3-complex `X → Y → Z` (degrees 2, 1, 0) built
/// from `f : X → Y` and `g : Y → Z`.
///
/// Its six terms, from total degree 3 down to -2, are
/// `Ker f, Ker gf, Ker g, Coker f, Coker gf, Coker g`.
pub fn six_term(f: &Matrix, g: &Matrix) -> Result<TotalHomology, ComplexError> {
    if g.cols() != f.rows() {
        return Err(ComplexError::ShapeMismatch(format!(
            "g has {} columns but f has {} rows",
            g.cols(),
            f.rows()
        )));
    }
    if f.field() != g.field() {
        return Err(LinalgError::DimensionMismatch("f and g live over different fields".into()).into());
    }
    let dims = [(2, f.cols()), (1, f.rows()), (0, g.rows())].into();
    let diffs = [(2, f.clone()), (1, g.clone())].into();
    let c = NComplex::build(f.field(), 3, dims, diffs)?;
    let total = total_homology(&c)?;
    Ok(total)
}

/// The six dimensions of [`six_term`] in sequence order, including zeros.
pub fn six_term_dims(total: &TotalHomology) -> [usize; 6] {
    let mut out = [0; 6];
    for (k, m) in (-2..=3).rev().enumerate() {
        out[k] = total.complex.dim(m);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::elementary_chain;
    use crate::cyclo::{field, FieldRef};

    fn f1() -> FieldRef {
        field(1)
    }

    fn zero_diff(order: u32, dims: &[(i64, usize)]) -> NComplex {
        NComplex::build(&f1(), order, dims.iter().copied().collect(), BTreeMap::new()).unwrap()
    }

    #[test]
    fn cells_of_small_complexes() {
        let c = zero_diff(3, &[(0, 1), (1, 1)]);
        assert_eq!(homology(&c, 1, 1).unwrap().dim(), 1);
        let chain = elementary_chain(&f1(), 3, 2, 3, 1).unwrap();
        for p in 1..=3 {
            for i in 0..=2 {
                assert_eq!(homology(&chain, p, i).unwrap().dim(), 0);
            }
        }
        assert!(is_n_exact(&chain).unwrap());
        assert!(!is_n_exact(&c).unwrap());
        assert!(top_cells(&c).unwrap().values().all(|&d| d == 0));
    }

    #[test]
    fn zero_differential_diagram() {
        let c = zero_diff(4, &[(0, 2), (1, 1)]);
        let d = homology_diagram(&c).unwrap();
        for (&(p, i), m) in d.i_star() {
            assert_eq!(m, &Matrix::identity(&f1(), c.dim(i)), "i_* at ({p},{i})");
        }
        assert!(d.d_star().values().all(Matrix::is_zero));
        assert_eq!(d.first_noncommuting_square(), None);
    }

    #[test]
    fn single_space_total() {
        let c = zero_diff(3, &[(0, 1)]);
        let t = total_homology(&c).unwrap();
        assert_eq!(t.complex.dims(), &[(-2, 1), (-1, 1)].into());
        assert_eq!(t.complex.diff(-1), Matrix::identity(&f1(), 1));
        assert_eq!(t.complex.order(), 2);
    }

    #[test]
    fn two_term_sequence() {
        // f : X -> Y with rank 1 from Q^2 to Q^2
        let f = Matrix::from_int_rows(&f1(), &[&[1, 2], &[2, 4]]);
        let c = NComplex::build(&f1(), 3, [(1, 2), (0, 2)].into(), [(1, f)].into()).unwrap();
        let t = total_homology(&c).unwrap();
        // Ker f, X, Y, Coker f
        assert_eq!(t.dims_descending(), vec![(1, 1), (0, 2), (-1, 2), (-2, 1)]);
        assert!(t.is_exact_sequence().unwrap());
    }

    #[test]
    fn six_term_examples() {
        let f = f1();
        let id = Matrix::identity(&f, 1);
        let zero = Matrix::zeros(&f, 1, 1);
        assert_eq!(six_term_dims(&six_term(&id, &id).unwrap()), [0; 6]);
        let t = six_term(&zero, &zero).unwrap();
        assert_eq!(six_term_dims(&t), [1; 6]);
        assert!(t.is_exact_sequence().unwrap());
        let t = six_term(&Matrix::zeros(&f, 1, 0), &id).unwrap();
        assert_eq!(six_term_dims(&t), [0, 0, 0, 1, 1, 0]);
        assert!(t.is_exact_sequence().unwrap());
    }
}
