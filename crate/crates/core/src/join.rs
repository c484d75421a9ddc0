//! The H-join: explicit construction, associated matrix, spectrum,
//! characteristic polynomial, eigenvectors and the regular-case quotient.
//!
//! Layout conventions are shared by every function here. Component `i`
//! occupies the vertex block `vertex_offsets[i]..vertex_offsets[i+1]` of the
//! join, in spec order, and the index block `offsets[i]..offsets[i+1]` of the
//! associated matrix, where `offsets[i+1] - offsets[i] = s_i`.

use nalgebra::{DMatrix, DVector};
use num_bigint::BigInt;
use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{IntMatrix, IntPoly};
use crate::graph::Graph;
use crate::main_spectrum::{classify_with_walk_data, walk_data, ClassifiedSpectrum, WalkData};
use crate::spectral::{
    clusters_ascending, general_eigenvalues_real, group_multiset, matching_distance,
    right_eigenvectors, sym_eigen, sym_eigenvalues, Origin, Spectrum,
};
use crate::Tolerances;

/// A random spec with `p` in `1..=max_p` and orders in `1..=max_n`; the host
/// and every component get their own uniform edge density.
pub fn random_spec<R: Rng + ?Sized>(rng: &mut R, max_p: usize, max_n: usize) -> JoinSpec {
    let p = rng.random_range(1..=max_p);
    let density = rng.random::<f64>();
    let host = Graph::random_gnp(p, density, rng);
    let comps = (0..p)
        .map(|_| {
            let n = rng.random_range(1..=max_n);
            let density = rng.random::<f64>();
            Graph::random_gnp(n, density, rng)
        })
        .collect();
    JoinSpec::new(host, comps).expect("valid random spec")
}

/// Vertex limit for the dense oracle unless `HJOIN_ORACLE_MAX` overrides it.
pub const DEFAULT_ORACLE_MAX: usize = 512;

pub fn oracle_max() -> usize {
    std::env::var("HJOIN_ORACLE_MAX")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_ORACLE_MAX)
}

/// A host graph `H` of order `p` and the ordered family `G_1..G_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JoinSpec {
    host: Graph,
    components: Vec<Graph>,
}

impl JoinSpec {
    pub fn new(host: Graph, components: Vec<Graph>) -> Result<Self> {
        if components.len() != host.order() {
            return Err(Error::Invalid(format!(
                "host has {} vertices but {} components were given",
                host.order(),
                components.len()
            )));
        }
        if let Some(i) = components.iter().position(|g| g.order() == 0) {
            return Err(Error::Invalid(format!("component {i} has no vertices")));
        }
        Ok(JoinSpec { host, components })
    }

    /// `K_1[G] = G`.
    pub fn single(g: Graph) -> Result<Self> {
        JoinSpec::new(Graph::complete(1), vec![g])
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn components(&self) -> &[Graph] {
        &self.components
    }

    pub fn order(&self) -> usize {
        self.components.iter().map(Graph::order).sum()
    }

    /// Prefix sums of component orders, length `p + 1`.
    pub fn vertex_offsets(&self) -> Vec<usize> {
        prefix_sums(self.components.iter().map(Graph::order))
    }
}

fn prefix_sums(it: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut out = vec![0];
    for x in it {
        out.push(out.last().unwrap() + x);
    }
    out
}

/// The H-join as an explicit graph (the oracle path).
pub fn hjoin_explicit(spec: &JoinSpec) -> Graph {
    let off = spec.vertex_offsets();
    let mut edges = Vec::new();
    for (i, g) in spec.components.iter().enumerate() {
        edges.extend(g.edges().iter().map(|&(u, v)| (u + off[i], v + off[i])));
    }
    for &(a, b) in spec.host.edges() {
        for u in off[a]..off[a + 1] {
            for v in off[b]..off[b + 1] {
                edges.push((u, v));
            }
        }
    }
    Graph::new(spec.order(), edges).expect("join edges are valid")
}

/// Applies `A(G)` of the join to a vector without building the join.
pub fn apply_join_adjacency(spec: &JoinSpec, v: &DVector<f64>) -> DVector<f64> {
    let off = spec.vertex_offsets();
    let block_sums: Vec<f64> = (0..spec.components.len())
        .map(|i| v.rows(off[i], off[i + 1] - off[i]).sum())
        .collect();
    let mut out = DVector::zeros(v.len());
    for (i, g) in spec.components.iter().enumerate() {
        for &(a, b) in g.edges() {
            out[off[i] + a] += v[off[i] + b];
            out[off[i] + b] += v[off[i] + a];
        }
    }
    for &(a, b) in spec.host.edges() {
        for u in off[a]..off[a + 1] {
            out[u] += block_sums[b];
        }
        for u in off[b]..off[b + 1] {
            out[u] += block_sums[a];
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockKind {
    /// Companion matrix of the component's main polynomial.
    Companion,
    /// First row holds the walk counts of the column component.
    WalkCounts,
    Zero,
}

/// The `s x s` associated matrix with `s = sum s_i`.
///
/// Diagonal block `i` is the companion matrix of `m_{G_i}` with ones on the
/// subdiagonal and `(c_{i,0}, ..., c_{i,s_i-1})` in the last column. The
/// off-diagonal block `(i, j)` is zero unless `ij` is a host edge, in which
/// case its first row is `(N_0^j, ..., N_{s_j-1}^j)` and the rest is zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssocMatrix {
    pub matrix: IntMatrix,
    /// Block starts, length `p + 1`.
    pub offsets: Vec<usize>,
    host: Graph,
}

impl AssocMatrix {
    pub fn size(&self) -> usize {
        self.matrix.rows()
    }

    pub fn block_kind(&self, i: usize, j: usize) -> BlockKind {
        if i == j {
            BlockKind::Companion
        } else if self.host.has_edge(i, j) {
            BlockKind::WalkCounts
        } else {
            BlockKind::Zero
        }
    }
}

pub fn assoc_from_walk_data(host: &Graph, walks: &[WalkData]) -> AssocMatrix {
    let offsets = prefix_sums(walks.iter().map(|w| w.s));
    let s = *offsets.last().unwrap();
    let mut m = IntMatrix::zeros(s, s);
    for (i, wd) in walks.iter().enumerate() {
        let o = offsets[i];
        for r in 0..wd.s {
            if r + 1 < wd.s {
                m.set(o + r + 1, o + r, 1.into());
            }
            m.set(o + r, o + wd.s - 1, wd.main_coeffs[r].clone());
        }
    }
    for &(a, b) in host.edges() {
        for (row, col) in [(a, b), (b, a)] {
            for (k, n_k) in walks[col].walk_counts.iter().enumerate() {
                m.set(offsets[row], offsets[col] + k, n_k.clone());
            }
        }
    }
    AssocMatrix {
        matrix: m,
        offsets,
        host: host.clone(),
    }
}

pub fn assoc_matrix(spec: &JoinSpec) -> Result<AssocMatrix> {
    let walks = component_walk_data(spec)?;
    Ok(assoc_from_walk_data(&spec.host, &walks))
}

fn component_walk_data(spec: &JoinSpec) -> Result<Vec<WalkData>> {
    spec.components.par_iter().map(walk_data).collect()
}

/// Walk data, classified spectra and the associated matrix of every
/// component, computed once and shared by the spectral routines.
#[derive(Debug, Clone)]
pub struct JoinAnalysis {
    pub spec: JoinSpec,
    pub walks: Vec<WalkData>,
    pub classified: Vec<ClassifiedSpectrum>,
    pub assoc: AssocMatrix,
}

impl JoinAnalysis {
    pub fn new(spec: &JoinSpec, tol: &Tolerances) -> Result<Self> {
        let walks = component_walk_data(spec)?;
        let classified = spec
            .components
            .par_iter()
            .zip(walks.par_iter())
            .map(|(g, wd)| classify_with_walk_data(g, wd, tol))
            .collect::<Result<Vec<_>>>()?;
        let assoc = assoc_from_walk_data(&spec.host, &walks);
        Ok(JoinAnalysis {
            spec: spec.clone(),
            walks,
            classified,
            assoc,
        })
    }

    /// Negative-control hook: perturbs one entry of the associated matrix
    /// so that downstream checks must fail.
    #[doc(hidden)]
    pub fn corrupt_assoc(&mut self) {
        let x = self.assoc.matrix.get(0, 0) + BigInt::from(1);
        self.assoc.matrix.set(0, 0, x);
    }

    /// Component eigenvalues surviving in the join: main ones with
    /// multiplicity reduced by one, non-main ones unchanged.
    pub fn component_part(&self) -> Spectrum {
        let mut s = Spectrum::default();
        for c in &self.classified {
            for e in &c.eigenvalues {
                if e.main {
                    s.push(e.value, e.multiplicity - 1, Origin::ComponentMain);
                } else {
                    s.push(e.value, e.multiplicity, Origin::ComponentNonMain);
                }
            }
        }
        s
    }

    /// Spectrum of the associated matrix, ascending, computed from the
    /// similar symmetric matrix [`JoinAnalysis::symmetric_assoc`]. The
    /// companion blocks make a direct nonsymmetric solve lose accuracy
    /// quickly as the `s_i` grow.
    pub fn assoc_eigenvalues(&self) -> Result<Vec<f64>> {
        sym_eigenvalues(&self.symmetric_assoc())
    }

    /// Spectrum of the associated matrix by a direct real Schur solve.
    pub fn assoc_eigenvalues_direct(&self, tol: &Tolerances) -> Result<Vec<f64>> {
        general_eigenvalues_real(&self.assoc.matrix.to_f64(), tol.group)
    }

    pub fn spectrum(&self, tol: &Tolerances) -> Result<Spectrum> {
        let assoc = self.assoc_eigenvalues()?;
        let comp = self.component_part();
        let radius = assoc
            .iter()
            .map(|v| v.abs())
            .chain(comp.entries.iter().map(|e| e.value.abs()))
            .fold(1.0, f64::max);
        let group = tol.group * radius;
        Ok(comp.union(group_multiset(&assoc, group, Origin::Assoc), group))
    }

    pub fn charpoly(&self) -> Result<IntPoly> {
        let mut acc = self.assoc.matrix.charpoly_exact()?;
        for (g, wd) in self.spec.components.iter().zip(&self.walks) {
            let phi = g.adjacency().charpoly_exact()?;
            let reduced = phi.div_exact(&wd.main_poly()).map_err(|_| {
                Error::Consistency(
                    "main polynomial does not divide the characteristic polynomial".into(),
                )
            })?;
            acc = &acc * &reduced;
        }
        Ok(acc)
    }

    /// Symmetric `s x s` matrix similar to the associated matrix: the
    /// restriction of `A(G)` to the sum of the components' main subspaces in
    /// the basis of normalised main eigenvectors. Diagonal entries are the
    /// main eigenvalues; entry `((i,a),(k,b))` for a host edge `ik` is the
    /// product of the `j`-projection lengths.
    pub fn symmetric_assoc(&self) -> DMatrix<f64> {
        let offsets = &self.assoc.offsets;
        let s = self.assoc.size();
        let mut m = DMatrix::zeros(s, s);
        let proj: Vec<Vec<f64>> = self
            .classified
            .iter()
            .map(|c| {
                c.eigenvalues
                    .iter()
                    .filter(|e| e.main)
                    .map(|e| e.j_projection)
                    .collect()
            })
            .collect();
        for (i, c) in self.classified.iter().enumerate() {
            for (a, v) in c.main_values().into_iter().enumerate() {
                m[(offsets[i] + a, offsets[i] + a)] = v;
            }
        }
        for &(i, k) in self.spec.host.edges() {
            for (a, pa) in proj[i].iter().enumerate() {
                for (b, pb) in proj[k].iter().enumerate() {
                    m[(offsets[i] + a, offsets[k] + b)] = pa * pb;
                    m[(offsets[k] + b, offsets[i] + a)] = pa * pb;
                }
            }
        }
        m
    }
}

/// Spectrum of the join from the component spectra and the associated
/// matrix, without building the join.
pub fn hjoin_spectrum(spec: &JoinSpec, tol: &Tolerances) -> Result<Spectrum> {
    JoinAnalysis::new(spec, tol)?.spectrum(tol)
}

/// Exact characteristic polynomial `prod_i (phi(G_i) / m_{G_i}) * phi(W)`.
pub fn hjoin_charpoly(spec: &JoinSpec) -> Result<IntPoly> {
    let walks = component_walk_data(spec)?;
    let assoc = assoc_from_walk_data(&spec.host, &walks);
    let mut acc = assoc.matrix.charpoly_exact()?;
    for (g, wd) in spec.components.iter().zip(&walks) {
        let phi = g.adjacency().charpoly_exact()?;
        acc = &acc * &phi.div_exact(&wd.main_poly())?;
    }
    Ok(acc)
}

/// The `p x p` quotient for all-regular families: degrees on the diagonal,
/// `sqrt(n_r n_s)` on host edges.
pub fn regular_quotient(spec: &JoinSpec) -> Result<DMatrix<f64>> {
    let p = spec.components.len();
    let mut degrees = Vec::with_capacity(p);
    for (i, g) in spec.components.iter().enumerate() {
        degrees.push(
            g.regular_degree()
                .ok_or(Error::NotRegular { component: i })? as f64,
        );
    }
    let mut c = DMatrix::from_diagonal(&DVector::from_vec(degrees));
    for &(r, s) in spec.host.edges() {
        let w = ((spec.components[r].order() * spec.components[s].order()) as f64).sqrt();
        c[(r, s)] = w;
        c[(s, r)] = w;
    }
    Ok(c)
}

/// A component eigenvector orthogonal to `j`, zero-padded into its block.
#[derive(Debug, Clone)]
pub struct EmbeddedVector {
    pub component: usize,
    pub eigenvalue: f64,
    /// Length `n_i`, unit norm, entries sum to zero.
    pub local: DVector<f64>,
}

/// An eigenvector built from an eigenpair `(rho, alpha)` of the associated
/// matrix as `v_i = W_{G_i} alpha_i`.
#[derive(Debug, Clone)]
pub struct ReconstructedVector {
    pub rho: f64,
    pub alpha: DVector<f64>,
    /// Length `sum n_i`, unit norm.
    pub vector: DVector<f64>,
}

#[derive(Debug, Clone)]
pub struct EigvecBundle {
    pub vertex_offsets: Vec<usize>,
    pub embedded: Vec<EmbeddedVector>,
    pub reconstructed: Vec<ReconstructedVector>,
    /// Largest `|A v - rho v| / |v|` over the whole collection.
    pub max_residual: f64,
}

impl EigvecBundle {
    pub fn len(&self) -> usize {
        self.embedded.len() + self.reconstructed.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn padded(&self, e: &EmbeddedVector) -> DVector<f64> {
        let n = *self.vertex_offsets.last().unwrap();
        let mut v = DVector::zeros(n);
        v.rows_mut(self.vertex_offsets[e.component], e.local.len())
            .copy_from(&e.local);
        v
    }

    /// All eigenpairs as `(eigenvalue, full-length vector)`.
    pub fn pairs(&self) -> Vec<(f64, DVector<f64>)> {
        self.embedded
            .iter()
            .map(|e| (e.eigenvalue, self.padded(e)))
            .chain(self.reconstructed.iter().map(|r| (r.rho, r.vector.clone())))
            .collect()
    }

    pub fn matrix(&self) -> DMatrix<f64> {
        let pairs = self.pairs();
        let n = *self.vertex_offsets.last().unwrap();
        let mut m = DMatrix::zeros(n, pairs.len());
        for (k, (_, v)) in pairs.iter().enumerate() {
            m.set_column(k, v);
        }
        m
    }

    /// Largest `|<e, r>|` between an embedded and a reconstructed vector.
    pub fn max_cross_inner_product(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for e in &self.embedded {
            let pe = self.padded(e);
            for r in &self.reconstructed {
                worst = worst.max(pe.dot(&r.vector).abs());
            }
        }
        worst
    }
}

/// Number of singular values above `n * eps * sigma_max`.
pub fn numerical_rank(m: &DMatrix<f64>) -> usize {
    if m.is_empty() {
        return 0;
    }
    let sv = m.clone().svd(false, false).singular_values;
    let max = sv.max();
    let cutoff = m.nrows().max(m.ncols()) as f64 * f64::EPSILON * max;
    sv.iter().filter(|&&x| x > cutoff).count()
}

/// Orthonormal basis of the part of an eigenspace (given by orthonormal
/// columns) orthogonal to `j`.
fn eigenspace_perp_j(basis: &DMatrix<f64>) -> DMatrix<f64> {
    let n = basis.nrows();
    let m = basis.ncols();
    let j = DVector::from_element(n, 1.0);
    let y = basis.transpose() * &j;
    let ny = y.norm();
    if ny <= f64::EPSILON * (n as f64) {
        // non-main: the whole eigenspace (clean the tiny j-component)
        let mut out = basis.clone();
        for mut c in out.column_iter_mut() {
            let sum = c.sum() / n as f64;
            c.add_scalar_mut(-sum);
        }
        return out;
    }
    // complement of y inside R^m, mapped through the basis
    let y = y / ny;
    let mut comp: Vec<DVector<f64>> = Vec::with_capacity(m - 1);
    for k in 0..m {
        if comp.len() == m - 1 {
            break;
        }
        let mut e = DVector::zeros(m);
        e[k] = 1.0;
        e -= &y * y[k];
        for c in &comp {
            let d = c.dot(&e);
            e -= c * d;
        }
        let ne = e.norm();
        if ne > 1e-8 {
            comp.push(e / ne);
        }
    }
    let mut out = DMatrix::zeros(n, comp.len());
    for (k, c) in comp.iter().enumerate() {
        out.set_column(k, &(basis * c));
    }
    out
}

impl JoinAnalysis {
    pub fn eigvecs(&self, tol: &Tolerances) -> Result<EigvecBundle> {
        let spec = &self.spec;
        let voff = spec.vertex_offsets();
        let total = spec.order();

        let mut embedded = Vec::new();
        for (i, c) in self.classified.iter().enumerate() {
            for e in &c.eigenvalues {
                let perp = if e.main && e.multiplicity == 1 {
                    DMatrix::zeros(c.order, 0)
                } else if e.main {
                    eigenspace_perp_j(&e.basis)
                } else {
                    let mut b = e.basis.clone();
                    let n = b.nrows() as f64;
                    for mut col in b.column_iter_mut() {
                        let mean = col.sum() / n;
                        col.add_scalar_mut(-mean);
                    }
                    b
                };
                for col in perp.column_iter() {
                    let nrm = col.norm();
                    embedded.push(EmbeddedVector {
                        component: i,
                        eigenvalue: e.value,
                        local: col / nrm,
                    });
                }
            }
        }

        let w = self.assoc.matrix.to_f64();
        // values from the well-conditioned symmetric form, vectors from W itself
        let eig = right_eigenvectors(&w, self.assoc_eigenvalues()?, tol.group)?;
        let offsets = &self.assoc.offsets;
        let walk_f64: Vec<DMatrix<f64>> = self
            .walks
            .iter()
            .map(|wd| wd.walk_matrix.to_f64())
            .collect();
        let lift = |alpha: &DVector<f64>| -> DVector<f64> {
            let mut v = DVector::zeros(total);
            for (i, wm) in walk_f64.iter().enumerate() {
                let a = alpha.rows(offsets[i], offsets[i + 1] - offsets[i]);
                v.rows_mut(voff[i], voff[i + 1] - voff[i])
                    .copy_from(&(wm * a));
            }
            v
        };

        let radius = eig.values.iter().map(|v| v.abs()).fold(1.0, f64::max);
        let mut reconstructed = Vec::new();
        for (start, len) in clusters_ascending(&eig.values, tol.group * radius) {
            let rho = eig.values[start..start + len].iter().sum::<f64>() / len as f64;
            let mut alphas: Vec<DVector<f64>> = (start..start + len)
                .map(|k| eig.vectors.column(k).clone_owned())
                .collect();
            let mut vs: Vec<DVector<f64>> = alphas.iter().map(&lift).collect();
            // orthonormalise the lifted vectors, carrying alpha along
            for a in 0..len {
                for b in 0..a {
                    let d = vs[b].dot(&vs[a]);
                    let (vb, ab) = (vs[b].clone(), alphas[b].clone());
                    vs[a] -= vb * d;
                    alphas[a] -= ab * d;
                }
                let nrm = vs[a].norm();
                vs[a] /= nrm;
                alphas[a] /= nrm;
            }
            for (alpha, vector) in alphas.into_iter().zip(vs) {
                reconstructed.push(ReconstructedVector { rho, alpha, vector });
            }
        }

        let mut bundle = EigvecBundle {
            vertex_offsets: voff,
            embedded,
            reconstructed,
            max_residual: 0.0,
        };
        if bundle.len() != total {
            return Err(Error::Consistency(format!(
                "{} eigenvectors for a join of order {total}",
                bundle.len()
            )));
        }
        for (rho, v) in bundle.pairs() {
            let r = (apply_join_adjacency(spec, &v) - &v * rho).norm() / v.norm();
            if r > tol.residual * (1.0 + rho.abs()) {
                return Err(Error::Consistency(format!(
                    "eigenvector residual {r:e} for eigenvalue {rho} exceeds tolerance"
                )));
            }
            bundle.max_residual = bundle.max_residual.max(r);
        }
        let rank = numerical_rank(&bundle.matrix());
        if rank != total {
            return Err(Error::Consistency(format!(
                "eigenvector collection has numerical rank {rank}, expected {total}"
            )));
        }
        Ok(bundle)
    }
}

/// Full eigenvector basis of the join from component eigenvectors and
/// eigenvectors of the associated matrix.
pub fn reconstruct_eigvecs(spec: &JoinSpec, tol: &Tolerances) -> Result<EigvecBundle> {
    JoinAnalysis::new(spec, tol)?.eigvecs(tol)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub order: usize,
    pub checks: Vec<Check>,
    pub spectrum_distance: Option<f64>,
    pub max_residual: Option<f64>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct VerifyOptions {
    /// Perturb the associated matrix before checking (negative control).
    pub corrupt_assoc: bool,
}

/// Differential check of the formula path against the explicit join.
pub fn verify_against_oracle(spec: &JoinSpec, tol: &Tolerances) -> Result<VerificationReport> {
    verify_with(spec, tol, VerifyOptions::default())
}

pub fn verify_with(
    spec: &JoinSpec,
    tol: &Tolerances,
    opts: VerifyOptions,
) -> Result<VerificationReport> {
    let order = spec.order();
    let guard = oracle_max();
    if order > guard {
        return Err(Error::Invalid(format!(
            "join has {order} vertices, above the oracle limit {guard} (set HJOIN_ORACLE_MAX)"
        )));
    }
    let explicit = hjoin_explicit(spec);
    let oracle_poly = explicit.adjacency().charpoly_exact()?;
    let oracle_eig = sym_eigen(&explicit.adjacency_f64())?.values;

    let mut checks = Vec::new();
    let analysis = JoinAnalysis::new(spec, tol).map(|mut a| {
        if opts.corrupt_assoc {
            a.corrupt_assoc();
        }
        a
    });
    let analysis = match analysis {
        Ok(a) => a,
        Err(e) => {
            checks.push(Check {
                name: "analysis",
                passed: false,
                detail: e.to_string(),
            });
            return Ok(VerificationReport {
                order,
                checks,
                spectrum_distance: None,
                max_residual: None,
            });
        }
    };

    match analysis.charpoly() {
        Ok(p) => checks.push(Check {
            name: "charpoly",
            passed: p == oracle_poly,
            detail: if p == oracle_poly {
                format!("{p}")
            } else {
                format!("formula {p} vs oracle {oracle_poly}")
            },
        }),
        Err(e) => checks.push(Check {
            name: "charpoly",
            passed: false,
            detail: e.to_string(),
        }),
    }

    let mut spectrum_distance = None;
    match analysis.spectrum(tol) {
        Ok(s) => {
            let d = matching_distance(&s.expand(), &oracle_eig);
            spectrum_distance = d;
            let bound = tol.group * oracle_eig.iter().map(|v| v.abs()).fold(1.0, f64::max);
            checks.push(Check {
                name: "spectrum",
                passed: d.is_some_and(|d| d <= bound),
                detail: match d {
                    Some(d) => format!("matching distance {d:e} (bound {bound:e})"),
                    None => format!(
                        "multiplicities sum to {} not {order}",
                        s.total_multiplicity()
                    ),
                },
            });
        }
        Err(e) => checks.push(Check {
            name: "spectrum",
            passed: false,
            detail: e.to_string(),
        }),
    }

    let mut max_residual = None;
    match analysis.eigvecs(tol) {
        Ok(b) => {
            max_residual = Some(b.max_residual);
            checks.push(Check {
                name: "eigenvectors",
                passed: true,
                detail: format!("{} vectors, max residual {:e}", b.len(), b.max_residual),
            });
        }
        Err(e) => checks.push(Check {
            name: "eigenvectors",
            passed: false,
            detail: e.to_string(),
        }),
    }

    Ok(VerificationReport {
        order,
        checks,
        spectrum_distance,
        max_residual,
    })
}
