//! Cartan entries, reflections of bicharacters, Weyl-groupoid exploration and
//! enumeration of the positive roots along a greedy longest word.

use crate::lattice::{Bicharacter, Weight};
use crate::scalars::{kappa, qfact, Scalar, ScalarError};
use std::collections::{BTreeMap, HashMap, VecDeque};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupoidError {
    #[error("{what} exceeded cap {cap}")]
    CapExceeded { what: String, cap: usize },
    #[error("index {0} out of range")]
    BadIndex(usize),
    #[error("word is not composable: {0}")]
    NonComposable(String),
    #[error("axiom violated: {0}")]
    AxiomViolated(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Limits that turn non-termination into errors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub roots: usize,
    pub objects: usize,
    pub cartan: u32,
    pub height: u32,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            roots: 1024,
            objects: 4096,
            cartan: 64,
            height: 12,
        }
    }
}

/// N_ij: the largest m ≤ cap with (m)_{q_ii}!·(m; q_ii, q_ij q_ji)! ≠ 0; −2 on the diagonal.
pub fn cartan_entry(chi: &Bicharacter, i: usize, j: usize, cap: u32) -> Result<i32, GroupoidError> {
    let n = chi.rank();
    if i >= n {
        return Err(GroupoidError::BadIndex(i));
    }
    if j >= n {
        return Err(GroupoidError::BadIndex(j));
    }
    if i == j {
        return Ok(-2);
    }
    let qii = chi.q(i, i);
    let y = chi.q(i, j) * chi.q(j, i);
    // (m)! (m;x,y)! vanishes first at the least m with (m)_x = 0 or 1 − x^{m−1} y = 0
    let mut p = y.clone();
    let mut qn = Scalar::zero();
    let mut xp = Scalar::one();
    for m in 1..=cap + 1 {
        qn += &xp;
        xp = &xp * qii;
        if qn.is_zero() || (Scalar::one() - &p).is_zero() {
            return Ok(m as i32 - 1);
        }
        p = &p * qii;
    }
    Err(GroupoidError::CapExceeded {
        what: format!("N_{{{},{}}}", i + 1, j + 1),
        cap: cap as usize,
    })
}

pub fn cartan_matrix(chi: &Bicharacter, cap: u32) -> Result<Vec<Vec<i32>>, GroupoidError> {
    let n = chi.rank();
    (0..n)
        .map(|i| (0..n).map(|j| cartan_entry(chi, i, j, cap)).collect())
        .collect()
}

/// One reflection σ_i: source χ, target τ_i(χ), and the images of the α_j.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReflectionStep {
    pub index: usize,
    pub source: Bicharacter,
    pub target: Bicharacter,
    /// `basis_map[j]` = α_j + N_ij α_i (and −α_i for j = i).
    pub basis_map: Vec<Weight>,
}

/// Images of the α_j under the reflection with Cartan row `row` at index i.
pub fn reflection_images(rank: usize, i: usize, row: &[i32]) -> Vec<Weight> {
    (0..rank)
        .map(|j| {
            if j == i {
                -Weight::simple(rank, i)
            } else {
                Weight::simple(rank, j) + Weight::simple(rank, i) * row[j]
            }
        })
        .collect()
}

pub fn reflect(chi: &Bicharacter, i: usize, cap: u32) -> Result<ReflectionStep, GroupoidError> {
    let n = chi.rank();
    if i >= n {
        return Err(GroupoidError::BadIndex(i));
    }
    let row: Vec<i32> = (0..n)
        .map(|j| cartan_entry(chi, i, j, cap))
        .collect::<Result<_, _>>()?;
    let basis_map = reflection_images(n, i, &row);
    let target = chi.pullback(&basis_map);
    Ok(ReflectionStep {
        index: i,
        source: chi.clone(),
        target,
        basis_map,
    })
}

/// Positive roots along a greedy longest word, with the data of each step.
#[derive(Clone, Debug)]
pub struct RootSystemData {
    pub chi: Bicharacter,
    pub theta: usize,
    /// β̇_1, …, β̇_θ
    pub positive_roots: Vec<Weight>,
    /// f(1), …, f(θ), zero-based indices
    pub longest_word: Vec<usize>,
    /// χ_{f,0} = χ, …, χ_{f,θ}
    pub step_bichars: Vec<Bicharacter>,
    /// Cartan matrix of each χ_{f,t}
    pub cartan_matrices: Vec<Vec<Vec<i32>>>,
    /// Accumulated maps 1s_{f,t}, as images of the α_j in the original basis
    pub step_maps: Vec<Vec<Weight>>,
}

impl RootSystemData {
    pub fn rank(&self) -> usize {
        self.chi.rank()
    }

    /// q_β = χ(β, β) for the t-th root.
    pub fn q_root(&self, t: usize) -> Scalar {
        self.chi.q_of(&self.positive_roots[t])
    }

    pub fn kappa_root(&self, t: usize) -> u64 {
        kappa(&self.q_root(t)).expect("root values are nonzero")
    }

    pub fn root_index(&self, b: &Weight) -> Option<usize> {
        self.positive_roots.iter().position(|r| r == b)
    }
}

pub fn enumerate_roots(chi: &Bicharacter, caps: &Caps) -> Result<RootSystemData, GroupoidError> {
    let n = chi.rank();
    let mut cur = chi.clone();
    let mut w: Vec<Weight> = (0..n).map(|j| Weight::simple(n, j)).collect();
    let mut data = RootSystemData {
        chi: chi.clone(),
        theta: 0,
        positive_roots: Vec::new(),
        longest_word: Vec::new(),
        step_bichars: vec![chi.clone()],
        cartan_matrices: vec![cartan_matrix(chi, caps.cartan)?],
        step_maps: vec![w.clone()],
    };
    loop {
        let Some(i) = (0..n).find(|&i| w[i].is_positive()) else {
            if let Some(j) = (0..n).find(|&j| !w[j].is_negative()) {
                return Err(GroupoidError::AxiomViolated(format!(
                    "image {:?} of simple root {} is neither positive nor negative",
                    w[j],
                    j + 1
                )));
            }
            break;
        };
        if data.positive_roots.len() >= caps.roots {
            return Err(GroupoidError::CapExceeded {
                what: "positive roots".into(),
                cap: caps.roots,
            });
        }
        data.positive_roots.push(w[i]);
        data.longest_word.push(i);
        let step = reflect(&cur, i, caps.cartan)?;
        w = step.basis_map.iter().map(|b| b.apply(&w)).collect();
        cur = step.target;
        data.cartan_matrices.push(cartan_matrix(&cur, caps.cartan)?);
        data.step_bichars.push(cur.clone());
        data.step_maps.push(w.clone());
    }
    data.theta = data.positive_roots.len();
    Ok(data)
}

/// m_ij = |R⁺ ∩ (ℤ≥0 α_i + ℤ≥0 α_j)|, after checking that 2m alternating
/// reflections return to χ with the identity basis map.
pub fn rank2_mij(
    chi: &Bicharacter,
    i: usize,
    j: usize,
    caps: &Caps,
) -> Result<usize, GroupoidError> {
    let n = chi.rank();
    if i >= n || j >= n {
        return Err(GroupoidError::BadIndex(i.max(j)));
    }
    if i == j {
        return Ok(1);
    }
    let rsd = enumerate_roots(chi, caps)?;
    let m = rsd
        .positive_roots
        .iter()
        .filter(|r| {
            r.coords()
                .iter()
                .enumerate()
                .all(|(k, &x)| k == i || k == j || x == 0)
        })
        .count();
    let mut cur = chi.clone();
    let mut w: Vec<Weight> = (0..n).map(|k| Weight::simple(n, k)).collect();
    for step in 0..2 * m {
        let idx = if step % 2 == 0 { i } else { j };
        let s = reflect(&cur, idx, caps.cartan)?;
        w = s.basis_map.iter().map(|b| b.apply(&w)).collect();
        cur = s.target;
    }
    let identity: Vec<Weight> = (0..n).map(|k| Weight::simple(n, k)).collect();
    if cur != *chi || w != identity {
        return Err(GroupoidError::AxiomViolated(format!(
            "(σ_{}σ_{})^{} is not the identity",
            i + 1,
            j + 1,
            m
        )));
    }
    Ok(m)
}

/// The objects reachable from χ and the reflections between them.
#[derive(Clone, Debug)]
pub struct GroupoidAtlas {
    pub objects: Vec<Bicharacter>,
    /// `arrows[a][i]` is the object index of τ_i(objects[a]).
    pub arrows: Vec<Vec<usize>>,
    pub cartan: Vec<Vec<Vec<i32>>>,
}

pub fn explore_groupoid(chi: &Bicharacter, caps: &Caps) -> Result<GroupoidAtlas, GroupoidError> {
    let n = chi.rank();
    let mut index: HashMap<Bicharacter, usize> = HashMap::new();
    let mut atlas = GroupoidAtlas {
        objects: vec![chi.clone()],
        arrows: Vec::new(),
        cartan: Vec::new(),
    };
    index.insert(chi.clone(), 0);
    let mut queue = VecDeque::from([0usize]);
    let mut pending: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    while let Some(a) = queue.pop_front() {
        let src = atlas.objects[a].clone();
        let cm = cartan_matrix(&src, caps.cartan)?;
        let mut row = Vec::with_capacity(n);
        for i in 0..n {
            let step = reflect(&src, i, caps.cartan)?;
            let b = match index.get(&step.target) {
                Some(&b) => b,
                None => {
                    if atlas.objects.len() >= caps.objects {
                        return Err(GroupoidError::CapExceeded {
                            what: "groupoid objects".into(),
                            cap: caps.objects,
                        });
                    }
                    let b = atlas.objects.len();
                    index.insert(step.target.clone(), b);
                    atlas.objects.push(step.target.clone());
                    queue.push_back(b);
                    b
                }
            };
            let back = reflect(&step.target, i, caps.cartan)?;
            if back.target != src {
                return Err(GroupoidError::AxiomViolated(format!(
                    "τ_{}² ≠ id at object {a}",
                    i + 1
                )));
            }
            let cm_t = cartan_matrix(&step.target, caps.cartan)?;
            if cm_t[i] != cm[i] {
                return Err(GroupoidError::AxiomViolated(format!(
                    "(C2) fails for row {} between objects {a} and {b}",
                    i + 1
                )));
            }
            row.push(b);
        }
        pending.insert(a, row);
        atlas.cartan.push(Vec::new());
        atlas.cartan[a] = cm;
    }
    atlas.arrows = pending.into_values().collect();
    Ok(atlas)
}

/// Length of σ_{f(1)}⋯σ_{f(k)} starting at `start`, by the inversion-set formula;
/// cross-checked against the incremental ±1 rule.
pub fn length(
    atlas: &GroupoidAtlas,
    start: usize,
    word: &[usize],
    caps: &Caps,
) -> Result<usize, GroupoidError> {
    let Some(first) = atlas.objects.get(start) else {
        return Err(GroupoidError::NonComposable(format!("no object {start}")));
    };
    let n = first.rank();
    let mut obj = start;
    let mut w: Vec<Weight> = (0..n).map(|j| Weight::simple(n, j)).collect();
    let mut incremental: i64 = 0;
    for &i in word {
        if i >= n {
            return Err(GroupoidError::NonComposable(format!(
                "letter {} out of range",
                i + 1
            )));
        }
        incremental += if w[i].is_positive() { 1 } else { -1 };
        let step = reflect(&atlas.objects[obj], i, caps.cartan)?;
        w = step.basis_map.iter().map(|b| b.apply(&w)).collect();
        obj = atlas.arrows[obj][i];
    }
    let end = enumerate_roots(&atlas.objects[obj], caps)?;
    let inversions = end
        .positive_roots
        .iter()
        .filter(|g| g.apply(&w).is_negative())
        .count();
    if inversions as i64 != incremental {
        return Err(GroupoidError::AxiomViolated(format!(
            "inversion count {inversions} differs from incremental length {incremental}"
        )));
    }
    Ok(inversions)
}

/// Every c: R⁺ → ℤ≥0 with Σ c(α)α = β and c(α) admissible ((c(α))_{q_α}! ≠ 0).
pub fn root_multisets(rsd: &RootSystemData, chi: &Bicharacter, beta: &Weight) -> Vec<Vec<u32>> {
    root_multisets_filtered(rsd, chi, beta, None)
}

/// As [`root_multisets`], additionally requiring c(root) ≥ tmin for `filter = Some((root, tmin))`.
pub fn root_multisets_filtered(
    rsd: &RootSystemData,
    chi: &Bicharacter,
    beta: &Weight,
    filter: Option<(usize, u32)>,
) -> Vec<Vec<u32>> {
    if !beta.is_nonneg() {
        return Vec::new();
    }
    let bounds: Vec<Option<u32>> = rsd
        .positive_roots
        .iter()
        .map(|r| {
            let q = chi.q_of(r);
            match kappa(&q).expect("nonzero") {
                0 => None,
                k => Some(k as u32 - 1),
            }
        })
        .collect();
    debug_assert!(rsd.positive_roots.iter().zip(&bounds).all(|(r, b)| {
        b.is_none_or(|b| {
            qfact(b as u64 + 1, &chi.q_of(r)).is_zero() && !qfact(b as u64, &chi.q_of(r)).is_zero()
        })
    }));
    let mut out = Vec::new();
    let mut cur = vec![0u32; rsd.theta];
    fn rec(
        k: usize,
        left: Weight,
        rsd: &RootSystemData,
        bounds: &[Option<u32>],
        filter: Option<(usize, u32)>,
        cur: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if k == rsd.theta {
            if left.is_zero() {
                out.push(cur.clone());
            }
            return;
        }
        let r = rsd.positive_roots[k];
        let lo = match filter {
            Some((idx, t)) if idx == k => t,
            _ => 0,
        };
        let mut c = 0u32;
        let mut rest = left;
        loop {
            if c >= lo {
                cur[k] = c;
                rec(k + 1, rest, rsd, bounds, filter, cur, out);
            }
            c += 1;
            rest = rest - r;
            if !rest.is_nonneg() || bounds[k].is_some_and(|b| c > b) {
                break;
            }
        }
        cur[k] = 0;
    }
    rec(0, *beta, rsd, &bounds, filter, &mut cur, &mut out);
    out
}

/// Verifies the generalized Cartan axioms (M1), (M2) on a matrix.
pub fn check_cartan_axioms(c: &[Vec<i32>]) -> bool {
    let n = c.len();
    (0..n).all(|i| {
        c[i][i] == -2
            && (0..n).all(|j| i == j || (c[i][j] >= 0 && ((c[i][j] == 0) == (c[j][i] == 0))))
    })
}
