//! q-tensor products, q-Hom complexes, composition and null-homotopies.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::complex::{ComplexError, DiffRepr, NComplex};
use crate::cyclo::{make_field, Scalar, ScalarError};
use crate::homology::homology;
use crate::linalg::{induced_map, Matrix};
use crate::qnum::q_binomial;

/// A family `f_i : C_i → E_{i+a}` of matrices; missing components are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedMap {
    pub degree: i64,
    pub components: BTreeMap<i64, Matrix>,
}

impl GradedMap {
    pub fn zero(degree: i64) -> Self {
        GradedMap { degree, components: BTreeMap::new() }
    }

    /// The identity chain morphism of `c`.
    pub fn identity(c: &NComplex) -> Self {
        let components = c.dims().iter().map(|(&i, &d)| (i, Matrix::identity(c.field(), d))).collect();
        GradedMap { degree: 0, components }
    }

    /// `f_i`, as a zero matrix of the right shape when absent.
    pub fn component(&self, source: &NComplex, target: &NComplex, i: i64) -> Matrix {
        self.components
            .get(&i)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(source.field(), target.dim(i + self.degree), source.dim(i)))
    }

    pub fn is_zero(&self) -> bool {
        self.components.values().all(Matrix::is_zero)
    }

    fn prune(mut self) -> Self {
        self.components.retain(|_, m| m.rows() > 0 && m.cols() > 0 && !m.is_zero());
        self
    }

    /// Checks that each component has shape `dim E_{i+a} × dim C_i`.
    pub fn check_shapes(&self, source: &NComplex, target: &NComplex) -> Result<(), ComplexError> {
        for (&i, m) in &self.components {
            if m.rows() != target.dim(i + self.degree) || m.cols() != source.dim(i) {
                return Err(ComplexError::ShapeMismatch(format!(
                    "component {i} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    target.dim(i + self.degree),
                    source.dim(i)
                )));
            }
        }
        Ok(())
    }

    pub fn to_repr(&self) -> GradedMapRepr {
        GradedMapRepr {
            degree: self.degree,
            components: self.components.iter().map(|(&i, m)| DiffRepr { i, matrix: m.to_repr() }).collect(),
        }
    }

    pub fn from_repr(repr: &GradedMapRepr, field_order: u32) -> Result<Self, ComplexError> {
        let field = make_field(field_order)?;
        let mut components = BTreeMap::new();
        for c in &repr.components {
            components.insert(c.i, Matrix::from_repr(&c.matrix, &field)?);
        }
        Ok(GradedMap { degree: repr.degree, components })
    }
}

/// Serialized graded map: `{"degree": a, "components": [{"i", "matrix"}...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedMapRepr {
    pub degree: i64,
    pub components: Vec<DiffRepr>,
}

fn check_same_field(a: &NComplex, b: &NComplex, q: &Scalar) -> Result<(), ComplexError> {
    for f in [b.field(), q.field()] {
        if f != a.field() {
            return Err(ScalarError::FieldMismatch { left: a.field().order(), right: f.order() }.into());
        }
    }
    Ok(())
}

/// The q-tensor product with `d(v⊗w) = d v ⊗ w + q^{deg v} v ⊗ d w`.
///
/// `(V⊗W)_n` is the sum of the blocks `V_i ⊗ W_{n-i}` in increasing `i`,
/// each block in Kronecker order. The result carries the order of `v` and is
/// not checked for nilpotency (call [`NComplex::check_nilpotent`]).
pub fn q_tensor(v: &NComplex, w: &NComplex, q: &Scalar) -> Result<TensorComplex, ComplexError> {
    check_same_field(v, w, q)?;
    let field = v.field();
    let mut layout: BTreeMap<i64, Vec<(i64, usize)>> = BTreeMap::new();
    let mut dims: BTreeMap<i64, usize> = BTreeMap::new();
    for (&i, &dv) in v.dims() {
        for (&j, &dw) in w.dims() {
            let n = i + j;
            let off = dims.entry(n).or_insert(0);
            layout.entry(n).or_default().push((i, *off));
            *off += dv * dw;
        }
    }
    let t = TensorComplex { complex: NComplex::assemble(field, v.order(), dims.clone(), BTreeMap::new())?, layout };
    let mut diffs = BTreeMap::new();
    for (&n, blocks) in &t.layout {
        let rows = dims.get(&(n - 1)).copied().unwrap_or(0);
        let mut d = Matrix::zeros(field, rows, dims[&n]);
        for &(i, col0) in blocks {
            let j = n - i;
            if let Some(r0) = t.offset(n - 1, i - 1) {
                d.set_block(r0, col0, &kron(&v.diff(i), &Matrix::identity(field, w.dim(j))));
            }
            if let Some(r0) = t.offset(n - 1, i) {
                let weight = q.pow(i)?;
                d.set_block(r0, col0, &kron(&Matrix::identity(field, v.dim(i)), &w.diff(j)).scale(&weight));
            }
        }
        diffs.insert(n, d);
    }
    Ok(TensorComplex { complex: NComplex::assemble(field, v.order(), dims, diffs)?, layout: t.layout })
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    Matrix::from_fn(a.field(), a.rows() * b.rows(), a.cols() * b.cols(), |r, c| {
        &a[(r / b.rows(), c / b.cols())] * &b[(r % b.rows(), c % b.cols())]
    })
}

/// A q-tensor product together with its block layout.
#[derive(Debug, Clone)]
pub struct TensorComplex {
    pub complex: NComplex,
    /// For each total degree, `(i, offset)` of the block `V_i ⊗ W_{n-i}`.
    pub layout: BTreeMap<i64, Vec<(i64, usize)>>,
}

impl TensorComplex {
    fn offset(&self, n: i64, i: i64) -> Option<usize> {
        self.layout.get(&n)?.iter().find(|b| b.0 == i).map(|b| b.1)
    }

    /// Coordinates of `v ⊗ w` for `v ∈ V_a`, `w ∈ W_b`.
    pub fn element(&self, a: i64, v: &[Scalar], b: i64, w: &[Scalar]) -> Vec<Scalar> {
        let n = a + b;
        let mut out = vec![Scalar::zero(self.complex.field()); self.complex.dim(n)];
        if let Some(off) = self.offset(n, a) {
            for (x, vx) in v.iter().enumerate() {
                for (y, wy) in w.iter().enumerate() {
                    out[off + x * w.len() + y] = vx * wy;
                }
            }
        }
        out
    }
}

/// `Σ_k q^{(n-k)a} [n k]_{q^{-1}} d^k v ⊗ d^{n-k} w` for `v ∈ V_a`, `w ∈ W_b`.
pub fn tensor_power_expand(
    t: &TensorComplex,
    v_complex: &NComplex,
    w_complex: &NComplex,
    (a, v): (i64, &[Scalar]),
    (b, w): (i64, &[Scalar]),
    n: u32,
    q: &Scalar,
) -> Result<Vec<Scalar>, ComplexError> {
    let q_inv = q.inv()?;
    let mut out = vec![Scalar::zero(q.field()); t.complex.dim(a + b - n as i64)];
    for k in 0..=n {
        let coeff = &q.pow((n - k) as i64 * a)? * &q_binomial(n, k as i64, &q_inv);
        if coeff.is_zero() {
            continue;
        }
        let dv = v_complex.power_map(a, k).apply(v);
        let dw = w_complex.power_map(b, n - k).apply(w);
        let term = t.element(a - k as i64, &dv, b - (n - k) as i64, &dw);
        for (o, x) in out.iter_mut().zip(term) {
            *o += &coeff * &x;
        }
    }
    Ok(out)
}

/// How the second term of the Hom differential is weighted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HomConvention {
    /// `d(f)_i = d_E f_i - q^{-a} f_{i-1} d_C` for `f` of degree `a`.
    /// Satisfies `d^N = 0` at a primitive N-th root and the q-Leibniz rule
    /// for composition.
    DegreeWeighted,
    /// `d(f)_i = d_E f_i - q^i f_{i-1} d_C`, weighting by the source degree.
    /// Kept for comparison: its square has a cross term `-2 q^i d_E f d_C`,
    /// so it is not an N-complex for `N > 2`.
    PositionWeighted,
}

/// `Hom(C, E)_n = ⊕_i Hom(C_i, E_{i+n})` with its differential.
///
/// Coordinates in degree `n` list the blocks `Hom(C_i, E_{i+n})` in
/// increasing `i`, each block row-major.
#[derive(Debug, Clone)]
pub struct HomComplex {
    pub complex: NComplex,
    pub source: NComplex,
    pub target: NComplex,
    pub convention: HomConvention,
    q: Scalar,
    /// For each Hom degree, `(i, offset)` of the block `Hom(C_i, E_{i+n})`.
    layout: BTreeMap<i64, Vec<(i64, usize)>>,
}

/// `d(f)` in the Hom sequence, for `f` of any degree.
pub fn hom_differential(
    f: &GradedMap,
    source: &NComplex,
    target: &NComplex,
    q: &Scalar,
    convention: HomConvention,
) -> Result<GradedMap, ComplexError> {
    let a = f.degree;
    let mut degrees: Vec<i64> = f.components.keys().flat_map(|&i| [i, i + 1]).collect();
    degrees.sort_unstable();
    degrees.dedup();
    let mut components = BTreeMap::new();
    for i in degrees {
        let mut g = target.diff(i + a).mul(&f.component(source, target, i));
        let weight = match convention {
            HomConvention::DegreeWeighted => q.pow(-a)?,
            HomConvention::PositionWeighted => q.pow(i)?,
        };
        let second = f.component(source, target, i - 1).mul(&source.diff(i)).scale(&weight);
        g = g.sub(&second);
        components.insert(i, g);
    }
    Ok(GradedMap { degree: a - 1, components }.prune())
}

pub fn q_hom(source: &NComplex, target: &NComplex, q: &Scalar, convention: HomConvention) -> Result<HomComplex, ComplexError> {
    check_same_field(source, target, q)?;
    let field = source.field();
    let mut layout: BTreeMap<i64, Vec<(i64, usize)>> = BTreeMap::new();
    let mut dims: BTreeMap<i64, usize> = BTreeMap::new();
    for (&i, &dc) in source.dims() {
        for (&j, &de) in target.dims() {
            let n = j - i;
            let off = dims.entry(n).or_insert(0);
            layout.entry(n).or_default().push((i, *off));
            *off += dc * de;
        }
    }
    for blocks in layout.values_mut() {
        blocks.sort_unstable();
    }
    // offsets must follow the sorted order
    for (n, blocks) in layout.iter_mut() {
        let mut off = 0;
        for b in blocks.iter_mut() {
            b.1 = off;
            off += source.dim(b.0) * target.dim(b.0 + n);
        }
    }
    let mut h = HomComplex {
        complex: NComplex::assemble(field, source.order(), dims.clone(), BTreeMap::new())?,
        source: source.clone(),
        target: target.clone(),
        convention,
        q: q.clone(),
        layout,
    };
    let mut diffs = BTreeMap::new();
    for (&n, &dim) in &dims {
        let rows = dims.get(&(n - 1)).copied().unwrap_or(0);
        let mut cols = Vec::with_capacity(dim);
        for k in 0..dim {
            let mut unit = vec![Scalar::zero(field); dim];
            unit[k] = Scalar::one(field);
            let f = h.graded_map(n, &unit)?;
            let g = hom_differential(&f, source, target, q, convention)?;
            cols.push(if rows == 0 { Vec::new() } else { h.vector(&g)? });
        }
        diffs.insert(n, Matrix::from_columns(field, rows, &cols));
    }
    h.complex = NComplex::assemble(field, source.order(), dims, diffs)?;
    Ok(h)
}

impl HomComplex {
    pub fn q(&self) -> &Scalar {
        &self.q
    }

    /// Flattens a graded map into Hom coordinates of its degree.
    pub fn vector(&self, f: &GradedMap) -> Result<Vec<Scalar>, ComplexError> {
        f.check_shapes(&self.source, &self.target)?;
        let field = self.complex.field();
        let mut out = vec![Scalar::zero(field); self.complex.dim(f.degree)];
        let Some(blocks) = self.layout.get(&f.degree) else {
            return if f.is_zero() {
                Ok(out)
            } else {
                Err(ComplexError::InvalidArgument("graded map outside the Hom support".into()))
            };
        };
        for &(i, off) in blocks {
            let m = f.component(&self.source, &self.target, i);
            for (k, x) in m.entries().iter().enumerate() {
                out[off + k] = x.clone();
            }
        }
        Ok(out)
    }

    /// The graded map of degree `n` with the given coordinates.
    pub fn graded_map(&self, n: i64, coords: &[Scalar]) -> Result<GradedMap, ComplexError> {
        if coords.len() != self.complex.dim(n) {
            return Err(ComplexError::ShapeMismatch(format!(
                "{} coordinates for a Hom space of dimension {}",
                coords.len(),
                self.complex.dim(n)
            )));
        }
        let field = self.complex.field();
        let mut components = BTreeMap::new();
        for &(i, off) in self.layout.get(&n).into_iter().flatten() {
            let (r, c) = (self.target.dim(i + n), self.source.dim(i));
            let m = Matrix::from_entries(field, r, c, coords[off..off + r * c].to_vec())?;
            components.insert(i, m);
        }
        Ok(GradedMap { degree: n, components }.prune())
    }

    /// Basis of the chain morphisms `C → E` (degree-0 cycles).
    pub fn chain_morphisms(&self) -> Result<Vec<GradedMap>, ComplexError> {
        self.complex
            .diff(0)
            .kernel_basis()
            .basis()
            .columns()
            .iter()
            .map(|v| self.graded_map(0, v))
            .collect()
    }

    pub fn is_chain_morphism(&self, f: &GradedMap) -> Result<bool, ComplexError> {
        Ok(f.degree == 0 && hom_differential(f, &self.source, &self.target, &self.q, self.convention)?.is_zero())
    }

    /// Some `s` of degree `N-1` with `d^{N-1} s = f`, or `None` when `f` is
    /// not null-homotopic.
    pub fn null_homotopy_certificate(&self, f: &GradedMap) -> Result<Option<GradedMap>, ComplexError> {
        if !self.is_chain_morphism(f)? {
            return Err(ComplexError::InvalidArgument("not a chain morphism".into()));
        }
        let n = self.complex.order();
        let top = n as i64 - 1;
        let target = self.vector(f)?;
        if target.iter().all(Scalar::is_zero) {
            return Ok(Some(GradedMap::zero(top)));
        }
        let power = self.complex.power_map(top, n - 1);
        if power.cols() == 0 {
            return Ok(None);
        }
        power.solve(&target)?.map(|s| self.graded_map(top, &s)).transpose()
    }

    /// `d^{N-1} s` for `s` of degree `N-1`.
    pub fn apply_power(&self, s: &GradedMap, p: u32) -> Result<GradedMap, ComplexError> {
        let mut f = s.clone();
        for _ in 0..p {
            f = hom_differential(&f, &self.source, &self.target, &self.q, self.convention)?;
        }
        Ok(f)
    }
}

/// The composite of `f : C → D` (degree `m`) and `g : D → E` (degree `n`),
/// with components `q^{mn} g_{p+m} f_p`.
pub fn compose(f: &GradedMap, g: &GradedMap, c: &NComplex, d: &NComplex, e: &NComplex, q: &Scalar) -> Result<GradedMap, ComplexError> {
    f.check_shapes(c, d)?;
    g.check_shapes(d, e)?;
    let (m, n) = (f.degree, g.degree);
    let weight = q.pow(m * n)?;
    let components = f
        .components
        .iter()
        .map(|(&p, fp)| (p, g.component(d, e, p + m).mul(fp).scale(&weight)))
        .collect();
    Ok(GradedMap { degree: m + n, components }.prune())
}

/// Which closed form for `d^n f` in the Hom sequence to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HomExpansion {
    /// `Σ_k (-1)^{n-k} q^{-(n-k)a + (n-k)(n-k-1)/2} [n k]_q d_E^k f d_C^{n-k}`,
    /// the expansion of the degree-weighted differential.
    DegreeWeighted,
    /// `Σ_k (-1)^{n-k} q^{(n-k)a} [n k]_{q^{-1}} d_E^k f d_C^{n-k}`.
    /// It agrees with the weight `q^a` for `n ≤ 1` only.
    Uncorrected,
}

pub fn hom_power_expand(
    f: &GradedMap,
    source: &NComplex,
    target: &NComplex,
    n: u32,
    q: &Scalar,
    form: HomExpansion,
) -> Result<GradedMap, ComplexError> {
    let a = f.degree;
    let q_inv = q.inv()?;
    let mut components: BTreeMap<i64, Matrix> = BTreeMap::new();
    for k in 0..=n {
        let j = (n - k) as i64;
        let sign = if j % 2 == 0 { Scalar::one(q.field()) } else { -Scalar::one(q.field()) };
        let coeff = match form {
            HomExpansion::DegreeWeighted => &(&sign * &q.pow(-j * a + j * (j - 1) / 2)?) * &q_binomial(n, k as i64, q),
            HomExpansion::Uncorrected => &(&sign * &q.pow(j * a)?) * &q_binomial(n, k as i64, &q_inv),
        };
        if coeff.is_zero() {
            continue;
        }
        for (&p, fp) in &f.components {
            // f_p d_C^{n-k} starts at C_{p+j}; d_E^k ends in E_{p+a-k}
            let i = p + j;
            let term = target.power_map(p + a, k).mul(fp).mul(&source.power_map(i, n - k)).scale(&coeff);
            match components.get_mut(&i) {
                Some(acc) => *acc = acc.add(&term),
                None => {
                    components.insert(i, term);
                }
            }
        }
    }
    Ok(GradedMap { degree: a - n as i64, components }.prune())
}

/// The matrices induced by a chain morphism on every `_pH_i`, `1 ≤ p ≤ N`.
pub fn induced_on_homology(f: &GradedMap, source: &NComplex, target: &NComplex) -> Result<BTreeMap<(u32, i64), Matrix>, ComplexError> {
    if f.degree != 0 {
        return Err(ComplexError::InvalidArgument("induced maps need a degree-0 morphism".into()));
    }
    let mut out = BTreeMap::new();
    let degrees: std::collections::BTreeSet<i64> = source.dims().keys().copied().collect();
    for p in 1..=source.order() {
        for &i in &degrees {
            let s = homology(source, p, i)?;
            let t = homology(target, p, i)?;
            out.insert((p, i), induced_map(&f.component(source, target, i), &s, &t)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{elementary_chain, root_of_unity};
    use crate::cyclo::field;
    use crate::generate::{random_ncomplex_in, Profile};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn unit(order: u32) -> NComplex {
        NComplex::build(&field(order), order, [(0, 1)].into(), BTreeMap::new()).unwrap()
    }

    #[test]
    fn tensor_with_unit() {
        let q = root_of_unity(3).unwrap();
        let c = elementary_chain(&field(3), 3, 2, 3, 2).unwrap();
        let t = q_tensor(&c, &unit(3), &q).unwrap();
        assert_eq!(t.complex, c);
        let t = q_tensor(&c, &c, &q).unwrap();
        assert_eq!(t.complex.dim(2), 3 * 4);
        assert!(t.complex.check_nilpotent().is_ok());
    }

    #[test]
    fn hom_from_unit() {
        let q = root_of_unity(3).unwrap();
        let c = elementary_chain(&field(3), 3, 2, 3, 1).unwrap();
        let h = q_hom(&unit(3), &c, &q, HomConvention::DegreeWeighted).unwrap();
        assert_eq!(h.complex, c);
        let h = q_hom(&c, &c, &q, HomConvention::DegreeWeighted).unwrap();
        assert!(h.complex.check_nilpotent().is_ok());
        let morphisms = h.chain_morphisms().unwrap();
        assert!(!morphisms.is_empty());
        for f in &morphisms {
            for i in 1..=2 {
                let lhs = c.diff(i).mul(&f.component(&c, &c, i));
                let rhs = f.component(&c, &c, i - 1).mul(&c.diff(i));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn position_weighted_hom_breaks_nilpotency() {
        let q = root_of_unity(3).unwrap();
        let c = elementary_chain(&field(3), 3, 2, 3, 1).unwrap();
        let h = q_hom(&c, &c, &q, HomConvention::PositionWeighted).unwrap();
        assert!(h.complex.check_nilpotent().is_err());
    }

    #[test]
    fn expansions_match_iteration() {
        let f = field(4);
        let q = root_of_unity(4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let c = random_ncomplex_in(&f, 4, Profile::Small, &mut rng).unwrap().complex;
        let e = random_ncomplex_in(&f, 4, Profile::Small, &mut rng).unwrap().complex;
        let h = q_hom(&c, &e, &q, HomConvention::DegreeWeighted).unwrap();
        for (&a, &dim) in h.complex.dims() {
            let coords: Vec<Scalar> = (0..dim).map(|k| Scalar::from_int(&f, k as i64 % 3 - 1)).collect();
            let g = h.graded_map(a, &coords).unwrap();
            for n in 0..=4 {
                let iterated = h.apply_power(&g, n).unwrap();
                let closed = hom_power_expand(&g, &c, &e, n, &q, HomExpansion::DegreeWeighted).unwrap();
                assert_eq!(iterated, closed, "degree {a}, n {n}");
            }
        }
    }

    #[test]
    fn composition_with_identity() {
        let q = root_of_unity(3).unwrap();
        let c = elementary_chain(&field(3), 3, 2, 3, 1).unwrap();
        let h = q_hom(&c, &c, &q, HomConvention::DegreeWeighted).unwrap();
        let coords: Vec<Scalar> = (0..h.complex.dim(1)).map(|k| Scalar::from_int(&field(3), k as i64 + 1)).collect();
        let f = h.graded_map(1, &coords).unwrap();
        let id = GradedMap::identity(&c);
        assert_eq!(compose(&f, &id, &c, &c, &c, &q).unwrap(), f);
        assert_eq!(compose(&id, &f, &c, &c, &c, &q).unwrap(), f);
    }

    #[test]
    fn null_homotopies() {
        let q = root_of_unity(3).unwrap();
        let c = elementary_chain(&field(3), 3, 2, 3, 1).unwrap();
        let h = q_hom(&c, &c, &q, HomConvention::DegreeWeighted).unwrap();
        // an exact complex: the identity is null-homotopic
        let id = GradedMap::identity(&c);
        let s = h.null_homotopy_certificate(&id).unwrap().unwrap();
        assert_eq!(h.apply_power(&s, 2).unwrap(), id);
        let z = unit(3);
        let hz = q_hom(&z, &z, &q, HomConvention::DegreeWeighted).unwrap();
        assert!(hz.null_homotopy_certificate(&GradedMap::identity(&z)).unwrap().is_none());
        let induced = induced_on_homology(&GradedMap::identity(&z), &z, &z).unwrap();
        assert_eq!(induced[&(1, 0)], Matrix::identity(&field(3), 1));
    }
}
