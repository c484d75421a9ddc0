//! Lexicographic products `H[G]`, lexicographic powers `H^k` of a regular
//! connected host, and mixed extensions.

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::IntPoly;
use crate::graph::Graph;
use crate::join::{assoc_from_walk_data, hjoin_explicit, JoinSpec};
use crate::main_spectrum::walk_data;
use crate::spectral::{group_multiset, sym_eigen, Origin, Spectrum};

/// `H[G] = H[G, ..., G]`.
pub fn lex_spec(h: &Graph, g: &Graph) -> Result<JoinSpec> {
    JoinSpec::new(h.clone(), vec![g.clone(); h.order()])
}

/// `phi(H[G]) = (phi(G) / m_G)^p * phi(W)`.
pub fn lex_charpoly(h: &Graph, g: &Graph) -> Result<IntPoly> {
    let wd = walk_data(g)?;
    let reduced = g.adjacency().charpoly_exact()?.div_exact(&wd.main_poly())?;
    let assoc = assoc_from_walk_data(h, &vec![wd; h.order()]);
    Ok(&reduced.pow(h.order() as u32) * &assoc.matrix.charpoly_exact()?)
}

/// `H^k` built explicitly, with `H^1 = H` and `H^t = H[H^{t-1}]`.
pub fn lex_power_explicit(h: &Graph, k: u32) -> Result<Graph> {
    if k == 0 {
        return Err(Error::Invalid("power must be at least 1".into()));
    }
    let mut g = h.clone();
    for _ in 1..k {
        g = hjoin_explicit(&lex_spec(h, &g)?);
    }
    Ok(g)
}

#[derive(Debug, Clone, PartialEq)]
pub enum PowerValue {
    Exact(BigInt),
    Float(f64),
}

impl PowerValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            PowerValue::Exact(v) => v.to_f64().unwrap_or(f64::NAN),
            PowerValue::Float(v) => *v,
        }
    }
}

impl std::fmt::Display for PowerValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PowerValue::Exact(v) => write!(f, "{v}"),
            PowerValue::Float(v) => write!(f, "{v}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PowerEntry {
    pub value: PowerValue,
    pub multiplicity: BigUint,
    /// Levels at which this value entered the spectrum.
    pub levels: Vec<u32>,
}

/// Spectrum of `H^k`, sorted by decreasing value.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSpectrum {
    pub k: u32,
    pub order: BigUint,
    pub degree: BigInt,
    pub entries: Vec<PowerEntry>,
}

impl PowerSpectrum {
    pub fn multiplicity_sum(&self) -> BigUint {
        self.entries.iter().map(|e| &e.multiplicity).sum()
    }

    pub fn is_exact(&self) -> bool {
        self.entries
            .iter()
            .all(|e| matches!(e.value, PowerValue::Exact(_)))
    }

    pub fn to_spectrum(&self) -> Spectrum {
        let mut s = Spectrum::default();
        for e in &self.entries {
            let mut origins: Vec<Origin> =
                e.levels.iter().map(|&l| Origin::PowerLevel(l)).collect();
            let first = origins.remove(0);
            s.push(e.value.to_f64(), e.multiplicity.clone(), first);
            s.entries.last_mut().unwrap().origins.extend(origins);
        }
        s
    }
}

struct Level<V> {
    value: V,
    mult: BigUint,
    levels: Vec<u32>,
}

fn evolve<V: Clone>(
    base: Vec<(V, BigUint)>,
    p: usize,
    d: &BigInt,
    k: u32,
    same: impl Fn(&V, &V) -> bool,
    affine: impl Fn(&BigInt, &BigUint, &V) -> V,
    from_int: impl Fn(&BigInt) -> V,
) -> Result<(Vec<Level<V>>, BigInt)> {
    let pb = BigUint::from(p);
    let mut cur: Vec<Level<V>> = base
        .iter()
        .map(|(v, m)| Level {
            value: v.clone(),
            mult: m.clone(),
            levels: vec![1],
        })
        .collect();
    let mut n_prev = pb.clone();
    let mut d_prev = d.clone();
    for t in 2..=k {
        let dv = from_int(&d_prev);
        let pos = cur
            .iter()
            .position(|l| same(&l.value, &dv))
            .ok_or_else(|| {
                Error::Consistency(format!("degree {d_prev} missing at level {}", t - 1))
            })?;
        for l in cur.iter_mut() {
            l.mult *= &pb;
        }
        cur[pos].mult -= &pb;
        if cur[pos].mult.is_zero() {
            cur.remove(pos);
        }
        for (lambda, m) in &base {
            let v = affine(&d_prev, &n_prev, lambda);
            match cur.iter_mut().find(|l| same(&l.value, &v)) {
                Some(l) => {
                    l.mult += m;
                    if !l.levels.contains(&t) {
                        l.levels.push(t);
                    }
                }
                None => cur.push(Level {
                    value: v,
                    mult: m.clone(),
                    levels: vec![t],
                }),
            }
        }
        d_prev += BigInt::from(n_prev.clone()) * d;
        n_prev *= &pb;
    }
    Ok((cur, d_prev))
}

/// Spectrum of `H^k` for a connected regular host, without constructing the
/// power. Values are exact integers when every eigenvalue of `H` is an
/// integer.
pub fn lex_power_regular(h: &Graph, k: u32) -> Result<PowerSpectrum> {
    if k == 0 {
        return Err(Error::Invalid("power must be at least 1".into()));
    }
    let p = h.order();
    let d = h
        .regular_degree()
        .ok_or(Error::NotRegular { component: 0 })?;
    if !h.is_connected() {
        return Err(Error::Invalid("host graph must be connected".into()));
    }
    let d = BigInt::from(d);
    let order = BigUint::from(p).pow(k);

    let phi = h.adjacency().charpoly_exact()?;
    let roots = phi.integer_roots();
    let (entries, degree) = if roots.iter().map(|r| r.1).sum::<usize>() == p {
        let base = roots
            .into_iter()
            .map(|(v, m)| (v, BigUint::from(m)))
            .collect();
        let (levels, degree) = evolve(
            base,
            p,
            &d,
            k,
            |a: &BigInt, b| a == b,
            |dp, np, l| dp + BigInt::from(np.clone()) * l,
            |x| x.clone(),
        )?;
        let mut e: Vec<PowerEntry> = levels
            .into_iter()
            .map(|l| PowerEntry {
                value: PowerValue::Exact(l.value),
                multiplicity: l.mult,
                levels: l.levels,
            })
            .collect();
        e.sort_by(|a, b| match (&b.value, &a.value) {
            (PowerValue::Exact(x), PowerValue::Exact(y)) => x.cmp(y),
            _ => unreachable!(),
        });
        (e, degree)
    } else {
        let values = sym_eigen(&h.adjacency_f64())?.values;
        let grouped = group_multiset(&values, 1e-9 * (1.0 + d.to_f64().unwrap()), Origin::Graph);
        let base = grouped
            .entries
            .iter()
            .map(|e| (e.value, e.multiplicity.clone()))
            .collect();
        let (levels, degree) = evolve(
            base,
            p,
            &d,
            k,
            |a: &f64, b: &f64| (a - b).abs() <= 1e-9 * (1.0 + a.abs().max(b.abs())),
            |dp, np, l| dp.to_f64().unwrap() + np.to_f64().unwrap() * l,
            |x| x.to_f64().unwrap(),
        )?;
        let mut e: Vec<PowerEntry> = levels
            .into_iter()
            .map(|l| PowerEntry {
                value: PowerValue::Float(l.value),
                multiplicity: l.mult,
                levels: l.levels,
            })
            .collect();
        e.sort_by(|a, b| b.value.to_f64().total_cmp(&a.value.to_f64()));
        (e, degree)
    };
    let out = PowerSpectrum {
        k,
        order,
        degree,
        entries,
    };
    if out.multiplicity_sum() != out.order {
        return Err(Error::Consistency(format!(
            "multiplicities sum to {} instead of {}",
            out.multiplicity_sum(),
            out.order
        )));
    }
    Ok(out)
}

/// `H[G_1, ..., G_p]` with `G_i = K_{a_i}` for `a_i > 0` and
/// `G_i = E_{|a_i|}` for `a_i < 0`.
pub fn mixed_extension(h: &Graph, a: &[i64]) -> Result<JoinSpec> {
    let comps = a
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let m = x.unsigned_abs() as usize;
            match x.signum() {
                1 => Ok(Graph::complete(m)),
                -1 => Ok(Graph::empty(m)),
                _ => Err(Error::Invalid(format!(
                    "entry {i} of the extension vector is zero"
                ))),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    JoinSpec::new(h.clone(), comps)
}

/// Total multiplicity of eigenvalues farther than `tol` from both 0 and -1.
pub fn count_outside_trivial(s: &Spectrum, tol: f64) -> BigUint {
    s.entries
        .iter()
        .filter(|e| e.value.abs() > tol && (e.value + 1.0).abs() > tol)
        .map(|e| &e.multiplicity)
        .sum()
}

/// `p^k` as a decimal string, used to label huge orders.
pub fn order_string(p: usize, k: u32) -> String {
    BigUint::from(p).pow(k).to_string()
}
