//! Type A quiver representations with a partial flag at the last vertex,
//! their orbits under `G_χ` and classification by flavored multisegments.

use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::linalg::sparse;
use crate::exact::rational::{format_rational, parse_rational, rat};
use crate::exact::{EchelonBasis, Matrix, Rational};
use crate::klrw::problem::blocks_of;
use crate::klrw::Problem;
use crate::multisegment::{FlavoredMultisegment, Segment, Segmentation};

/// Maps `f_i: C^{v_i} -> C^{v_{i+1}}` for `i = 1..m-1`, with `v_m = n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverRep {
    problem: Problem,
    maps: Vec<Matrix>,
}

/// Invertible `g_1..g_m`; `g_m` is block upper triangular for the blocks of
/// equal `χ` entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement {
    mats: Vec<Matrix>,
}

/// The dimensions read off at one step of the classification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankInvariants {
    /// Rank of `f_{k;1}` on `ker f_{k+1;1}` for `k = 1..m-1`.
    pub segment_ranks: Vec<usize>,
    /// `dim ker f_{m;1}`.
    pub kernel_dim: usize,
    /// `(p_t, dim f_{m;1}^{-1}(F_{p_t}))` for each distinct flavor `p_t`.
    pub flag_preimages: Vec<(i64, usize)>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Entry {
    Int(i64),
    Text(String),
}

#[derive(Serialize, Deserialize)]
struct RepJson {
    m: u32,
    #[serde(default)]
    n: Option<usize>,
    v: Vec<usize>,
    chi: Vec<i64>,
    maps: Vec<Vec<Vec<Entry>>>,
}

impl QuiverRep {
    pub fn new(problem: Problem, maps: Vec<Matrix>) -> Result<Self> {
        problem.validate()?;
        let dims = problem.full_dims();
        if maps.len() + 1 != dims.len() {
            return Err(Error::Shape(format!("{} maps for {} vertices", maps.len(), dims.len())));
        }
        for (i, f) in maps.iter().enumerate() {
            if (f.rows(), f.cols()) != (dims[i + 1], dims[i]) {
                return Err(Error::Shape(format!(
                    "f_{} is {}x{}, expected {}x{}",
                    i + 1,
                    f.rows(),
                    f.cols(),
                    dims[i + 1],
                    dims[i]
                )));
            }
        }
        Ok(QuiverRep { problem, maps })
    }

    pub fn zero(problem: Problem) -> Result<Self> {
        let dims = problem.full_dims();
        let maps = dims.windows(2).map(|w| Matrix::zeros(w[1], w[0])).collect();
        Self::new(problem, maps)
    }

    pub fn problem(&self) -> &Problem {
        &self.problem
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    /// Reads `{"m":..,"n":..,"v":[..],"chi":[..],"maps":[[["p/q",..],..],..]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RepJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let problem = Problem::new(raw.m, raw.v, raw.chi)?;
        if raw.n.is_some_and(|n| n != problem.n) {
            return Err(Error::InvalidProblem("n disagrees with the length of chi".into()));
        }
        let dims = problem.full_dims();
        let mut maps = Vec::new();
        for (i, rows) in raw.maps.into_iter().enumerate() {
            let cols = dims.get(i).copied().unwrap_or(0);
            let rows = rows
                .into_iter()
                .map(|row| {
                    row.into_iter()
                        .map(|e| match e {
                            Entry::Int(k) => Ok(rat(k)),
                            Entry::Text(s) => parse_rational(&s),
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            maps.push(Matrix::from_rows(rows, cols)?);
        }
        Self::new(problem, maps)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let maps: Vec<Vec<Vec<String>>> = self
            .maps
            .iter()
            .map(|f| f.to_rows().iter().map(|r| r.iter().map(format_rational).collect()).collect())
            .collect();
        serde_json::json!({
            "m": self.problem.m,
            "n": self.problem.n,
            "v": self.problem.v,
            "chi": self.problem.chi,
            "maps": maps,
        })
    }

    /// `dim V = Σ v_i v_{i+1}`.
    pub fn space_dimension(&self) -> usize {
        self.problem.full_dims().windows(2).map(|w| w[0] * w[1]).sum()
    }
}

/// `dim G_χ = Σ_{i<m} v_i² + n² - Σ_{s<t} g_s g_t` for block sizes `g`.
pub fn group_dimension(p: &Problem) -> usize {
    let blocks: Vec<usize> = p.chi_blocks().iter().map(|b| b.len()).collect();
    let lower: usize = (0..blocks.len()).flat_map(|t| (0..t).map(move |s| (s, t))).map(|(s, t)| blocks[s] * blocks[t]).sum();
    p.v.iter().map(|v| v * v).sum::<usize>() + p.n * p.n - lower
}

fn in_parabolic(g: &Matrix, chi: &[i64]) -> bool {
    let block = block_index(chi);
    (0..g.rows()).all(|r| (0..g.cols()).all(|c| block[r] <= block[c] || g.get(r, c).is_zero()))
}

fn block_index(chi: &[i64]) -> Vec<usize> {
    let mut out = vec![0; chi.len()];
    for (b, range) in blocks_of(chi).into_iter().enumerate() {
        for i in range {
            out[i] = b;
        }
    }
    out
}

impl GroupElement {
    pub fn new(p: &Problem, mats: Vec<Matrix>) -> Result<Self> {
        let dims = p.full_dims();
        if mats.len() != dims.len() {
            return Err(Error::Shape(format!("{} matrices for {} vertices", mats.len(), dims.len())));
        }
        for (g, &d) in mats.iter().zip(&dims) {
            if (g.rows(), g.cols()) != (d, d) {
                return Err(Error::Shape(format!("expected a {d}x{d} matrix")));
            }
            if g.determinant()?.is_zero() {
                return Err(Error::Singular);
            }
        }
        if !in_parabolic(mats.last().unwrap(), &p.chi) {
            return Err(Error::NotParabolic);
        }
        Ok(GroupElement { mats })
    }

    pub fn identity(p: &Problem) -> Self {
        GroupElement {
            mats: p.full_dims().into_iter().map(Matrix::identity).collect(),
        }
    }

    pub fn mats(&self) -> &[Matrix] {
        &self.mats
    }

    /// `(gh)_i = g_i h_i`.
    pub fn compose(&self, other: &GroupElement) -> Result<GroupElement> {
        let mats = self.mats.iter().zip(&other.mats).map(|(g, h)| g.mul(h)).collect::<Result<_>>()?;
        Ok(GroupElement { mats })
    }

    /// Small integer entries in `[-2, 2]`, resampled until invertible.
    pub fn random<R: Rng + ?Sized>(p: &Problem, rng: &mut R) -> Self {
        let dims = p.full_dims();
        let last = dims.len() - 1;
        let block = block_index(&p.chi);
        let mats = dims
            .iter()
            .enumerate()
            .map(|(i, &d)| loop {
                let mut g = Matrix::zeros(d, d);
                for r in 0..d {
                    for c in 0..d {
                        if i != last || block[r] <= block[c] {
                            g.set(r, c, rat(rng.gen_range(-2..=2)));
                        }
                    }
                }
                if !g.determinant().expect("square").is_zero() {
                    break g;
                }
            })
            .collect();
        GroupElement { mats }
    }
}

/// `f_i ↦ g_{i+1} f_i g_i^{-1}`.
pub fn act(g: &GroupElement, r: &QuiverRep) -> Result<QuiverRep> {
    let dims = r.problem.full_dims();
    if g.mats.len() != dims.len() || g.mats.iter().zip(&dims).any(|(m, &d)| m.rows() != d) {
        return Err(Error::Shape("group element does not match the representation".into()));
    }
    let inverses = g.mats.iter().map(Matrix::inverse).collect::<Result<Vec<_>>>()?;
    let maps = r
        .maps
        .iter()
        .enumerate()
        .map(|(i, f)| g.mats[i + 1].mul(f)?.mul(&inverses[i]))
        .collect::<Result<_>>()?;
    QuiverRep::new(r.problem.clone(), maps)
}

/// The 0/1 representative `f_Σ` sending each point of a block to the next.
pub fn canonical_rep(s: &Segmentation, chi: &[i64]) -> Result<QuiverRep> {
    let dims = s.dims().to_vec();
    let problem = Problem::new(s.m(), dims[..dims.len() - 1].to_vec(), chi.to_vec())?;
    if problem.n != dims[dims.len() - 1] {
        return Err(Error::Shape("chi does not match the red points of the segmentation".into()));
    }
    let mut maps: Vec<Matrix> = dims.windows(2).map(|w| Matrix::zeros(w[1], w[0])).collect();
    for (i, f) in maps.iter_mut().enumerate() {
        for j in 1..=dims[i] {
            if let Some(t) = s.successor(i as u32 + 1, j) {
                f.set(t - 1, j - 1, Rational::one());
            }
        }
    }
    QuiverRep::new(problem, maps)
}

fn kernel_dim(f: &Matrix) -> usize {
    f.cols() - f.rank()
}

/// Rows `from..` of `f`.
fn lower_rows(f: &Matrix, from: usize) -> Matrix {
    Matrix::from_rows(f.to_rows().split_off(from), f.cols()).expect("same width")
}

/// A basis of the column span of `f` extended by standard basis vectors in
/// increasing order; returns the coordinate projection onto the complement
/// and the chosen standard indices.
fn quotient_by_image(f: &Matrix) -> (Matrix, Vec<usize>) {
    let d = f.rows();
    let mut basis = EchelonBasis::new();
    let mut columns: Vec<Vec<Rational>> = Vec::new();
    for j in 0..f.cols() {
        let c = f.column(j);
        if basis.insert(sparse(&c)) {
            columns.push(c);
        }
    }
    let image = columns.len();
    let mut chosen = Vec::new();
    for i in 0..d {
        let mut e = vec![Rational::zero(); d];
        e[i] = Rational::one();
        if basis.insert(sparse(&e)) {
            columns.push(e);
            chosen.push(i);
        }
    }
    let b = Matrix::from_rows(columns, d).expect("square").transpose();
    let inv = b.inverse().expect("basis");
    (lower_rows(&inv, image), chosen)
}

fn standard_columns(d: usize, chosen: &[usize]) -> Matrix {
    let mut c = Matrix::zeros(d, chosen.len());
    for (k, &i) in chosen.iter().enumerate() {
        c.set(i, k, Rational::one());
    }
    c
}

/// The flavored multisegment labelling the orbit of `r`, with the
/// invariants read at each step of the recursion.
pub fn classify_with_invariants(r: &QuiverRep) -> (FlavoredMultisegment, Vec<RankInvariants>) {
    let m_total = r.problem.m;
    let mut unflavored = Vec::new();
    let mut flavored = Vec::new();
    let mut levels = Vec::new();
    let mut dims = r.problem.full_dims();
    let mut maps = r.maps.clone();
    let mut chi = r.problem.chi.clone();
    let mut offset = 0u32;
    while dims.len() > 1 {
        let m = dims.len();
        // composites[k] = f_{k+1;1}
        let mut composites = vec![Matrix::identity(dims[0])];
        for f in &maps {
            let next = f.mul(composites.last().unwrap()).expect("shapes");
            composites.push(next);
        }
        let kernels: Vec<usize> = composites.iter().map(kernel_dim).collect();
        let segment_ranks: Vec<usize> = (0..m - 1).map(|k| kernels[k + 1] - kernels[k]).collect();
        for (k, &count) in segment_ranks.iter().enumerate() {
            let seg = Segment::new(offset + 1, offset + k as u32 + 1).expect("segment");
            unflavored.extend(std::iter::repeat_n(seg, count));
        }
        let top = &composites[m - 1];
        let mut flag_preimages = Vec::new();
        let mut previous = kernels[m - 1];
        for range in blocks_of(&chi) {
            let dim = kernel_dim(&lower_rows(top, range.end));
            let seg = Segment::new(offset + 1, m_total).expect("segment");
            flavored.extend(std::iter::repeat_n((seg, chi[range.start]), dim - previous));
            flag_preimages.push((chi[range.start], dim));
            previous = dim;
        }
        levels.push(RankInvariants {
            segment_ranks,
            kernel_dim: kernels[m - 1],
            flag_preimages,
        });

        // Pass to the quotient by the subrepresentation generated at vertex 1.
        let quotients: Vec<(Matrix, Vec<usize>)> = composites[1..].iter().map(quotient_by_image).collect();
        let new_maps = (1..m - 1)
            .map(|i| {
                let (q_next, _) = &quotients[i];
                let (_, chosen) = &quotients[i - 1];
                q_next
                    .mul(&maps[i])
                    .and_then(|x| x.mul(&standard_columns(dims[i], chosen)))
                    .expect("shapes")
            })
            .collect();
        let kept = &quotients[m - 2].1;
        chi = kept.iter().map(|&i| chi[i]).collect();
        dims = quotients.iter().map(|(_, c)| c.len()).collect();
        maps = new_maps;
        offset += 1;
    }
    let seg = Segment::new(m_total, m_total).expect("segment");
    flavored.extend(chi.iter().map(|&c| (seg, c)));
    let ms = FlavoredMultisegment::new(m_total, unflavored, flavored).expect("classified segments fit");
    (ms, levels)
}

pub fn classify(r: &QuiverRep) -> FlavoredMultisegment {
    classify_with_invariants(r).0
}

/// Dimension of the Lie algebra of the stabilizer of `r` in `G_χ`.
pub fn stabilizer_dimension(r: &QuiverRep) -> usize {
    let dims = r.problem.full_dims();
    let block = block_index(&r.problem.chi);
    let last = dims.len() - 1;
    // Variable index of X_i[a][b].
    let mut var = Vec::new();
    let mut count = 0;
    for (i, &d) in dims.iter().enumerate() {
        let mut table = vec![vec![None; d]; d];
        for (a, row) in table.iter_mut().enumerate() {
            for (b, slot) in row.iter_mut().enumerate() {
                if i != last || block[a] <= block[b] {
                    *slot = Some(count);
                    count += 1;
                }
            }
        }
        var.push(table);
    }
    let mut equations = Vec::new();
    for (i, f) in r.maps.iter().enumerate() {
        // (X_{i+1} f - f X_i)[a][c]
        for a in 0..dims[i + 1] {
            for c in 0..dims[i] {
                let mut eq = vec![Rational::zero(); count];
                for s in 0..dims[i + 1] {
                    if let Some(x) = var[i + 1][a][s] {
                        eq[x] += f.get(s, c);
                    }
                }
                for s in 0..dims[i] {
                    if let Some(x) = var[i][s][c] {
                        eq[x] -= f.get(a, s);
                    }
                }
                equations.push(eq);
            }
        }
    }
    let system = Matrix::from_rows(equations, count).expect("rectangular");
    count - system.rank()
}

pub fn orbit_dimension(r: &QuiverRep) -> usize {
    group_dimension(&r.problem) - stabilizer_dimension(r)
}
