//! U(χ,Π): Nichols halves by Gram reduction, triangular normal form, Sh, Ω, Ξ,
//! the antipode on U⁻ and Lusztig isomorphisms.

mod element;
mod maps;

pub use element::{shapovalov_project, BasisId, Monomial, UElement};
pub use maps::{lusztig_map, root_vectors, GeneratorImages, LusztigMap, RootVectors};

use crate::groupoid::{enumerate_roots, root_multisets, Caps, GroupoidError, RootSystemData};
use crate::lattice::{Bicharacter, Weight, KL};
use crate::linalg::{EchelonBasis, Matrix};
use crate::scalars::{parse_scalar, Scalar, ScalarError};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{Arc, RwLock};
use thiserror::Error;

pub type Word = Vec<u8>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("degree {deg:?}: expected dimension {expected}, Gram rank {found}")]
    RankMismatch {
        deg: Vec<i32>,
        expected: usize,
        found: usize,
    },
    #[error("degree {deg:?} exceeds the height cap {cap}")]
    HeightCap { deg: Vec<i32>, cap: u32 },
    #[error("letter {0} is out of range")]
    BadLetter(usize),
    #[error("element has an E-part; expected an element of U⁻U⁰")]
    NotInMinusPart,
    #[error("Lusztig map undefined: {0}")]
    Lusztig(String),
    #[error("cached registry does not match: {0}")]
    BadRecord(String),
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Chosen bases of U⁺_β and U⁻_{−β} and the Gram matrix between them.
#[derive(Debug)]
pub struct DegreeData {
    pub degree: Weight,
    pub e_words: Vec<Word>,
    pub f_words: Vec<Word>,
    /// Basis word = letter · (basis word of degree − α_letter), as (letter, index).
    e_split: Vec<(u8, u32)>,
    f_split: Vec<(u8, u32)>,
    pub gram: Matrix,
    gram_inv: Matrix,
    gram_inv_t: Matrix,
}

impl DegreeData {
    pub fn dim(&self) -> usize {
        self.e_words.len()
    }
}

/// Serializable form of a registry entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeRecord {
    pub degree: Weight,
    pub e_words: Vec<Word>,
    pub f_words: Vec<Word>,
    pub gram: Vec<Vec<String>>,
}

type Cache<K, V> = RwLock<HashMap<K, Arc<V>>>;

fn cached<K: Eq + Hash + Clone, V, E>(
    cache: &Cache<K, V>,
    key: &K,
    compute: impl FnOnce() -> Result<V, E>,
) -> Result<Arc<V>, E> {
    if let Some(v) = cache.read().unwrap().get(key) {
        return Ok(v.clone());
    }
    let v = Arc::new(compute()?);
    Ok(cache
        .write()
        .unwrap()
        .entry(key.clone())
        .or_insert(v)
        .clone())
}

pub fn word_degree(rank: usize, w: &[u8]) -> Weight {
    let mut d = Weight::zero(rank);
    for &i in w {
        d = d + Weight::simple(rank, i as usize);
    }
    d
}

/// Sparse coordinates in a basis.
pub type Coords = Vec<(u32, Scalar)>;

fn sparse(v: Vec<Scalar>) -> Coords {
    v.into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i as u32, c))
        .collect()
}

/// U(χ,Π) with lazily built, memoized per-degree data.
pub struct Algebra {
    chi: Bicharacter,
    rank: usize,
    height_cap: u32,
    roots: Option<RootSystemData>,
    degrees: Cache<Weight, DegreeData>,
    pv_memo: Cache<Word, Vec<Scalar>>,
    qv_memo: Cache<Word, Vec<Scalar>>,
    e_left: Cache<(u8, BasisId), Coords>,
    derivs: Cache<(u8, BasisId), (Coords, Coords)>,
    ef_memo: Cache<(BasisId, BasisId), UElement>,
    fmul_memo: Cache<(BasisId, BasisId), Coords>,
    emul_memo: Cache<(BasisId, BasisId), Coords>,
}

impl std::fmt::Debug for Algebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Algebra({:?})", self.chi)
    }
}

impl Algebra {
    /// Dimensions are checked against the root system when it is finite within the caps.
    pub fn new(chi: Bicharacter, caps: &Caps) -> Self {
        let roots = enumerate_roots(&chi, caps).ok();
        Self::with_roots(chi, roots, caps.height)
    }

    pub fn with_roots(chi: Bicharacter, roots: Option<RootSystemData>, height_cap: u32) -> Self {
        let rank = chi.rank();
        Algebra {
            chi,
            rank,
            height_cap,
            roots,
            degrees: Default::default(),
            pv_memo: Default::default(),
            qv_memo: Default::default(),
            e_left: Default::default(),
            derivs: Default::default(),
            ef_memo: Default::default(),
            fmul_memo: Default::default(),
            emul_memo: Default::default(),
        }
    }

    pub fn chi(&self) -> &Bicharacter {
        &self.chi
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn roots(&self) -> Option<&RootSystemData> {
        self.roots.as_ref()
    }

    pub fn height_cap(&self) -> u32 {
        self.height_cap
    }

    fn alpha(&self, i: u8) -> Weight {
        Weight::simple(self.rank, i as usize)
    }

    fn check_word(&self, w: &[u8]) -> Result<(), AlgebraError> {
        match w.iter().find(|&&i| i as usize >= self.rank) {
            Some(&i) => Err(AlgebraError::BadLetter(i as usize)),
            None => Ok(()),
        }
    }

    // ---- registry ----

    pub fn degree(&self, beta: &Weight) -> Result<Arc<DegreeData>, AlgebraError> {
        cached(&self.degrees, beta, || self.build_degree(beta))
    }

    /// Degrees built or imported so far, sorted by height.
    pub fn built_degrees(&self) -> Vec<Weight> {
        let mut v: Vec<Weight> = self.degrees.read().unwrap().keys().cloned().collect();
        v.sort_by_key(|w| (w.height(), w.coords().to_vec()));
        v
    }

    pub fn dim(&self, beta: &Weight) -> Result<usize, AlgebraError> {
        if !beta.is_nonneg() {
            return Ok(0);
        }
        Ok(self.degree(beta)?.dim())
    }

    fn build_degree(&self, beta: &Weight) -> Result<DegreeData, AlgebraError> {
        assert!(
            beta.is_nonneg(),
            "basis requested for a non-positive degree"
        );
        if beta.is_zero() {
            return Ok(DegreeData {
                degree: *beta,
                e_words: vec![vec![]],
                f_words: vec![vec![]],
                e_split: vec![],
                f_split: vec![],
                gram: Matrix::identity(1),
                gram_inv: Matrix::identity(1),
                gram_inv_t: Matrix::identity(1),
            });
        }
        if beta.height() > self.height_cap as i64 {
            return Err(AlgebraError::HeightCap {
                deg: beta.coords().to_vec(),
                cap: self.height_cap,
            });
        }
        let mut e_cand: Vec<(u8, u32, Word)> = Vec::new();
        let mut f_cand: Vec<(u8, u32, Word)> = Vec::new();
        for i in 0..self.rank as u8 {
            let lower = *beta - self.alpha(i);
            if !lower.is_nonneg() {
                continue;
            }
            let d = self.degree(&lower)?;
            for (x, w) in d.e_words.iter().enumerate() {
                e_cand.push((i, x as u32, [&[i][..], w].concat()));
            }
            for (y, w) in d.f_words.iter().enumerate() {
                f_cand.push((i, y as u32, [&[i][..], w].concat()));
            }
        }
        let rows: Vec<(u8, u32)> = e_cand.iter().map(|(i, x, _)| (*i, *x)).collect();
        let columns: Vec<Vec<Scalar>> = f_cand
            .iter()
            .map(|(_, _, w)| self.pair_rows(w, &rows))
            .collect::<Result<_, _>>()?;
        let mut row_basis = EchelonBasis::new();
        let mut chosen_rows = Vec::new();
        for a in 0..e_cand.len() {
            let row: Vec<Scalar> = columns.iter().map(|c| c[a].clone()).collect();
            if row_basis.insert(&row) {
                chosen_rows.push(a);
            }
        }
        let mut col_basis = EchelonBasis::new();
        let mut chosen_cols = Vec::new();
        for (b, col) in columns.iter().enumerate() {
            let sub: Vec<Scalar> = chosen_rows.iter().map(|&a| col[a].clone()).collect();
            if col_basis.insert(&sub) {
                chosen_cols.push(b);
            }
        }
        let r = chosen_rows.len();
        if let Some(rsd) = &self.roots {
            let expected = root_multisets(rsd, &self.chi, beta).len();
            if expected != r {
                return Err(AlgebraError::RankMismatch {
                    deg: beta.coords().to_vec(),
                    expected,
                    found: r,
                });
            }
        }
        let gram = Matrix::from_rows(
            chosen_rows
                .iter()
                .map(|&a| chosen_cols.iter().map(|&b| columns[b][a].clone()).collect())
                .collect(),
            r,
        );
        let gram_inv = gram.inverse().expect("selected Gram minor is invertible");
        Ok(DegreeData {
            degree: *beta,
            e_words: chosen_rows.iter().map(|&a| e_cand[a].2.clone()).collect(),
            f_words: chosen_cols.iter().map(|&b| f_cand[b].2.clone()).collect(),
            e_split: chosen_rows
                .iter()
                .map(|&a| (e_cand[a].0, e_cand[a].1))
                .collect(),
            f_split: chosen_cols
                .iter()
                .map(|&b| (f_cand[b].0, f_cand[b].1))
                .collect(),
            gram_inv_t: gram_inv.transpose(),
            gram_inv,
            gram,
        })
    }

    pub fn export_degree(&self, beta: &Weight) -> Result<DegreeRecord, AlgebraError> {
        let d = self.degree(beta)?;
        Ok(DegreeRecord {
            degree: d.degree,
            e_words: d.e_words.clone(),
            f_words: d.f_words.clone(),
            gram: d
                .gram
                .to_rows()
                .iter()
                .map(|r| r.iter().map(|s| s.to_string()).collect())
                .collect(),
        })
    }

    /// Installs a previously exported entry without recomputing its pairings.
    /// Lower degrees are built or looked up as needed; the record must be
    /// structurally consistent with them and with the PBW count.
    pub fn import_degree(&self, rec: &DegreeRecord) -> Result<bool, AlgebraError> {
        let beta = rec.degree;
        let bad = |why: &str| AlgebraError::BadRecord(format!("degree {:?}: {why}", beta.coords()));
        if beta.rank() != self.rank || !beta.is_nonneg() || beta.is_zero() {
            return Err(bad("not a positive degree"));
        }
        if self.degrees.read().unwrap().contains_key(&beta) {
            return Ok(false);
        }
        let r = rec.e_words.len();
        if rec.f_words.len() != r
            || rec.gram.len() != r
            || rec.gram.iter().any(|row| row.len() != r)
        {
            return Err(bad("inconsistent sizes"));
        }
        if let Some(rsd) = &self.roots {
            if root_multisets(rsd, &self.chi, &beta).len() != r {
                return Err(bad("size differs from the PBW count"));
            }
        }
        let split = |w: &Word, is_e: bool| -> Result<(u8, u32), AlgebraError> {
            self.check_word(w)?;
            if w.is_empty() || word_degree(self.rank, w) != beta {
                return Err(bad("word of the wrong degree"));
            }
            let lower = self.degree(&(beta - self.alpha(w[0])))?;
            let list = if is_e { &lower.e_words } else { &lower.f_words };
            let idx = list
                .iter()
                .position(|x| x[..] == w[1..])
                .ok_or_else(|| bad("word not built from a lower basis"))?;
            Ok((w[0], idx as u32))
        };
        let e_split = rec
            .e_words
            .iter()
            .map(|w| split(w, true))
            .collect::<Result<Vec<_>, _>>()?;
        let f_split = rec
            .f_words
            .iter()
            .map(|w| split(w, false))
            .collect::<Result<Vec<_>, _>>()?;
        let rows = rec
            .gram
            .iter()
            .map(|row| {
                row.iter()
                    .map(|s| parse_scalar(s, self.chi.field()))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| bad("unparsable Gram entry"))?;
        let gram = Matrix::from_rows(rows, r);
        let gram_inv = gram.inverse().ok_or_else(|| bad("singular Gram matrix"))?;
        let data = DegreeData {
            degree: beta,
            e_words: rec.e_words.clone(),
            f_words: rec.f_words.clone(),
            e_split,
            f_split,
            gram_inv_t: gram_inv.transpose(),
            gram_inv,
            gram,
        };
        self.degrees
            .write()
            .unwrap()
            .entry(beta)
            .or_insert_with(|| Arc::new(data));
        Ok(true)
    }

    // ---- pairing ----

    /// Rows (letter, lower index) paired against an arbitrary F-word:
    /// τ(i·X', Y) = Σ_{k: Y_k = i} χ(α_i, deg Y_{<k}) τ(X', Y∖k).
    fn pair_rows(&self, y: &[u8], rows: &[(u8, u32)]) -> Result<Vec<Scalar>, AlgebraError> {
        let mut out = vec![Scalar::zero(); rows.len()];
        let mut prefix = Weight::zero(self.rank);
        let mut subs: HashMap<u8, Vec<(Scalar, Arc<Vec<Scalar>>)>> = HashMap::new();
        for (k, &i) in y.iter().enumerate() {
            if rows.iter().any(|(r, _)| *r == i) {
                let rest: Word = [&y[..k], &y[k + 1..]].concat();
                let c = self.chi.eval(&self.alpha(i), &prefix);
                subs.entry(i).or_default().push((c, self.pv(&rest)?));
            }
            prefix = prefix + self.alpha(i);
        }
        for (a, (i, x)) in rows.iter().enumerate() {
            if let Some(list) = subs.get(i) {
                for (c, v) in list {
                    let s = &v[*x as usize];
                    if !s.is_zero() {
                        out[a] += c * s;
                    }
                }
            }
        }
        Ok(out)
    }

    /// τ(X_x, Y) for every E-basis word X_x of degree deg Y.
    pub fn pv(&self, y: &[u8]) -> Result<Arc<Vec<Scalar>>, AlgebraError> {
        if y.is_empty() {
            return Ok(Arc::new(vec![Scalar::one()]));
        }
        self.check_word(y)?;
        cached(&self.pv_memo, &y.to_vec(), || {
            let d = self.degree(&word_degree(self.rank, y))?;
            self.pair_rows(y, &d.e_split)
        })
    }

    /// τ(X, Y_y) for every F-basis word Y_y of degree deg X:
    /// τ(X, j·Y') = Σ_{k: X_k = j} χ(deg X_{<k}, α_j) τ(X∖k, Y').
    pub fn qv(&self, x: &[u8]) -> Result<Arc<Vec<Scalar>>, AlgebraError> {
        if x.is_empty() {
            return Ok(Arc::new(vec![Scalar::one()]));
        }
        self.check_word(x)?;
        cached(&self.qv_memo, &x.to_vec(), || {
            let d = self.degree(&word_degree(self.rank, x))?;
            let mut out = vec![Scalar::zero(); d.f_split.len()];
            let mut prefix = Weight::zero(self.rank);
            for (k, &j) in x.iter().enumerate() {
                if d.f_split.iter().any(|(r, _)| *r == j) {
                    let rest: Word = [&x[..k], &x[k + 1..]].concat();
                    let c = self.chi.eval(&prefix, &self.alpha(j));
                    let sub = self.qv(&rest)?;
                    for (b, (r, y)) in d.f_split.iter().enumerate() {
                        if *r == j && !sub[*y as usize].is_zero() {
                            out[b] += &c * &sub[*y as usize];
                        }
                    }
                }
                prefix = prefix + self.alpha(j);
            }
            Ok(out)
        })
    }

    /// τ(X, Y) for arbitrary words, through the basis of deg X.
    pub fn pair_words(&self, x: &[u8], y: &[u8]) -> Result<Scalar, AlgebraError> {
        self.check_word(x)?;
        let (dx, dy) = (word_degree(self.rank, x), word_degree(self.rank, y));
        if dx != dy {
            return Ok(Scalar::zero());
        }
        let p = self.pv(y)?;
        let c = self.reduce_e(x)?;
        Ok(c.iter().map(|(i, s)| s * &p[*i as usize]).sum())
    }

    /// τ(Σ a·X K_λ, Σ b·Y L_μ) = Σ a b τ(X, Y) χ(λ, μ).
    pub fn pairing(
        &self,
        plus: &[(Scalar, Word, Weight)],
        minus: &[(Scalar, Word, Weight)],
    ) -> Result<Scalar, AlgebraError> {
        let mut acc = Scalar::zero();
        for (a, x, l) in plus {
            for (b, y, m) in minus {
                let t = self.pair_words(x, y)?;
                if !t.is_zero() {
                    acc += a * b * t * self.chi.eval(l, m);
                }
            }
        }
        Ok(acc)
    }

    // ---- reduction ----

    /// Coordinates of an F-word in the basis of its degree: G⁻¹·pv(Y).
    pub fn reduce_f(&self, y: &[u8]) -> Result<Coords, AlgebraError> {
        if y.is_empty() {
            return Ok(vec![(0, Scalar::one())]);
        }
        let d = self.degree(&word_degree(self.rank, y))?;
        if d.dim() == 0 {
            return Ok(vec![]);
        }
        let p = self.pv(y)?;
        Ok(sparse(d.gram_inv.mul_vec(&p)))
    }

    /// Coordinates of an E-word: G⁻ᵀ·qv(X).
    pub fn reduce_e(&self, x: &[u8]) -> Result<Coords, AlgebraError> {
        if x.is_empty() {
            return Ok(vec![(0, Scalar::one())]);
        }
        let d = self.degree(&word_degree(self.rank, x))?;
        if d.dim() == 0 {
            return Ok(vec![]);
        }
        let q = self.qv(x)?;
        Ok(sparse(d.gram_inv_t.mul_vec(&q)))
    }

    pub fn e_word_of(&self, id: &BasisId) -> Result<Word, AlgebraError> {
        Ok(self.degree(&id.deg)?.e_words[id.idx as usize].clone())
    }

    pub fn f_word_of(&self, id: &BasisId) -> Result<Word, AlgebraError> {
        Ok(self.degree(&id.deg)?.f_words[id.idx as usize].clone())
    }

    // ---- constructors ----

    pub fn one(&self) -> UElement {
        UElement::one(self.rank)
    }

    pub fn group_like(&self, k: Weight, l: Weight) -> UElement {
        UElement::group_like(KL::new(k, l))
    }

    /// The class of an E-word in U⁺.
    pub fn e_word(&self, x: &[u8]) -> Result<UElement, AlgebraError> {
        self.check_word(x)?;
        let deg = word_degree(self.rank, x);
        let mut r = UElement::zero();
        for (i, c) in self.reduce_e(x)? {
            r.add_term(
                Monomial::new(
                    BasisId::empty(self.rank),
                    KL::one(self.rank),
                    BasisId { deg, idx: i },
                ),
                c,
            );
        }
        Ok(r)
    }

    /// The class of an F-word in U⁻.
    pub fn f_word(&self, y: &[u8]) -> Result<UElement, AlgebraError> {
        self.check_word(y)?;
        let deg = word_degree(self.rank, y);
        let mut r = UElement::zero();
        for (i, c) in self.reduce_f(y)? {
            r.add_term(
                Monomial::new(
                    BasisId { deg, idx: i },
                    KL::one(self.rank),
                    BasisId::empty(self.rank),
                ),
                c,
            );
        }
        Ok(r)
    }

    pub fn e(&self, i: usize) -> UElement {
        self.e_word(&[i as u8]).expect("generator")
    }

    pub fn f(&self, i: usize) -> UElement {
        self.f_word(&[i as u8]).expect("generator")
    }

    pub fn e_basis(&self, deg: Weight, idx: usize) -> UElement {
        UElement::monomial(
            Monomial::new(
                BasisId::empty(self.rank),
                KL::one(self.rank),
                BasisId::new(deg, idx),
            ),
            Scalar::one(),
        )
    }

    pub fn f_basis(&self, deg: Weight, idx: usize) -> UElement {
        UElement::monomial(
            Monomial::new(
                BasisId::new(deg, idx),
                KL::one(self.rank),
                BasisId::empty(self.rank),
            ),
            Scalar::one(),
        )
    }

    // ---- normal ordering ----

    fn e_left(&self, i: u8, x: &BasisId) -> Result<Arc<Coords>, AlgebraError> {
        cached(&self.e_left, &(i, *x), || {
            let w = self.e_word_of(x)?;
            self.reduce_e(&[&[i][..], &w].concat())
        })
    }

    /// Coordinates of r_i(Y) and r'_i(Y) with
    /// r_i(Y) = Σ_{k: Y_k = i} χ(α_i, γ_k)⁻¹ Y∖k, r'_i(Y) = Σ χ(γ_k, α_i) Y∖k, γ_k = deg Y_{>k}.
    fn derivations(&self, i: u8, y: &BasisId) -> Result<Arc<(Coords, Coords)>, AlgebraError> {
        cached(&self.derivs, &(i, *y), || {
            let w = self.f_word_of(y)?;
            let lower = y.deg - self.alpha(i);
            if !lower.is_nonneg() {
                return Ok((vec![], vec![]));
            }
            let n = self.dim(&lower)?;
            let mut r = vec![Scalar::zero(); n];
            let mut rp = vec![Scalar::zero(); n];
            let mut suffix = Weight::zero(self.rank);
            for k in (0..w.len()).rev() {
                if w[k] == i {
                    let rest: Word = [&w[..k], &w[k + 1..]].concat();
                    let a = self.chi.eval(&self.alpha(i), &suffix).inv()?;
                    let b = self.chi.eval(&suffix, &self.alpha(i));
                    for (idx, c) in self.reduce_f(&rest)? {
                        r[idx as usize] += &a * &c;
                        rp[idx as usize] += &b * &c;
                    }
                }
                suffix = suffix + self.alpha(w[k]);
            }
            Ok((sparse(r), sparse(rp)))
        })
    }

    /// E_i · a for a in normal form.
    pub fn e_times(&self, i: usize, a: &UElement) -> Result<UElement, AlgebraError> {
        let i8 = i as u8;
        if i >= self.rank {
            return Err(AlgebraError::BadLetter(i));
        }
        let ai = self.alpha(i8);
        let mut out = UElement::zero();
        for (m, c) in a.terms() {
            let f = self.chi.eval(&m.kl.k, &ai).inv()? * self.chi.eval(&ai, &m.kl.l);
            let cf = c * &f;
            let target = m.e.deg + ai;
            for (x, d) in self.e_left(i8, &m.e)?.iter() {
                out.add_term(
                    Monomial::new(
                        m.f,
                        m.kl,
                        BasisId {
                            deg: target,
                            idx: *x,
                        },
                    ),
                    &cf * d,
                );
            }
            if !m.f.is_empty() {
                let der = self.derivations(i8, &m.f)?;
                let lower = m.f.deg - ai;
                let kplus = KL::new(m.kl.k + ai, m.kl.l);
                let lplus = KL::new(m.kl.k, m.kl.l + ai);
                for (y, d) in &der.0 {
                    out.add_term(
                        Monomial::new(
                            BasisId {
                                deg: lower,
                                idx: *y,
                            },
                            kplus,
                            m.e,
                        ),
                        -(c * d),
                    );
                }
                for (y, d) in &der.1 {
                    out.add_term(
                        Monomial::new(
                            BasisId {
                                deg: lower,
                                idx: *y,
                            },
                            lplus,
                            m.e,
                        ),
                        c * d,
                    );
                }
            }
        }
        Ok(out)
    }

    /// Normal form of X_x · Y_y.
    fn ef(&self, x: &BasisId, y: &BasisId) -> Result<Arc<UElement>, AlgebraError> {
        if x.is_empty() {
            return Ok(Arc::new(UElement::monomial(
                Monomial::new(*y, KL::one(self.rank), *x),
                Scalar::one(),
            )));
        }
        if y.is_empty() {
            return Ok(Arc::new(UElement::monomial(
                Monomial::new(*y, KL::one(self.rank), *x),
                Scalar::one(),
            )));
        }
        cached(&self.ef_memo, &(*x, *y), || {
            let d = self.degree(&x.deg)?;
            let (i, lower_idx) = d.e_split[x.idx as usize];
            let lower = BasisId {
                deg: x.deg - self.alpha(i),
                idx: lower_idx,
            };
            let inner = self.ef(&lower, y)?;
            self.e_times(i as usize, &inner)
        })
    }

    fn fmul(&self, a: &BasisId, b: &BasisId) -> Result<Arc<Coords>, AlgebraError> {
        if a.is_empty() {
            return Ok(Arc::new(vec![(b.idx, Scalar::one())]));
        }
        if b.is_empty() {
            return Ok(Arc::new(vec![(a.idx, Scalar::one())]));
        }
        cached(&self.fmul_memo, &(*a, *b), || {
            self.reduce_f(&[self.f_word_of(a)?, self.f_word_of(b)?].concat())
        })
    }

    fn emul(&self, a: &BasisId, b: &BasisId) -> Result<Arc<Coords>, AlgebraError> {
        if a.is_empty() {
            return Ok(Arc::new(vec![(b.idx, Scalar::one())]));
        }
        if b.is_empty() {
            return Ok(Arc::new(vec![(a.idx, Scalar::one())]));
        }
        cached(&self.emul_memo, &(*a, *b), || {
            self.reduce_e(&[self.e_word_of(a)?, self.e_word_of(b)?].concat())
        })
    }

    /// a · b in triangular normal form.
    pub fn multiply(&self, a: &UElement, b: &UElement) -> Result<UElement, AlgebraError> {
        let mut out = UElement::zero();
        for (m1, c1) in a.terms() {
            for (m2, c2) in b.terms() {
                let mid = self.ef(&m1.e, &m2.f)?;
                let c12 = c1 * c2;
                for (m, c) in mid.terms() {
                    // K_λ L_μ Y' = χ(λ,β')⁻¹ χ(β',μ) Y' K_λ L_μ for deg Y' = −β'
                    let fb = m.f.deg;
                    let ge = m.e.deg;
                    let mut s = &c12 * c;
                    if !fb.is_zero() {
                        s = s * self.chi.eval(&m1.kl.k, &fb).inv()? * self.chi.eval(&fb, &m1.kl.l);
                    }
                    // X' K_λ L_μ = χ(λ,γ')⁻¹ χ(γ',μ) K_λ L_μ X'
                    if !ge.is_zero() {
                        s = s * self.chi.eval(&m2.kl.k, &ge).inv()? * self.chi.eval(&ge, &m2.kl.l);
                    }
                    let kl = m1.kl + m.kl + m2.kl;
                    let fc = self.fmul(&m1.f, &m.f)?;
                    let ec = self.emul(&m.e, &m2.e)?;
                    let fdeg = m1.f.deg + fb;
                    let edeg = ge + m2.e.deg;
                    for (fi, fv) in fc.iter() {
                        let sf = &s * fv;
                        for (ei, ev) in ec.iter() {
                            out.add_term(
                                Monomial::new(
                                    BasisId {
                                        deg: fdeg,
                                        idx: *fi,
                                    },
                                    kl,
                                    BasisId {
                                        deg: edeg,
                                        idx: *ei,
                                    },
                                ),
                                &sf * ev,
                            );
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn product(&self, factors: &[UElement]) -> Result<UElement, AlgebraError> {
        let mut acc = self.one();
        for f in factors {
            acc = self.multiply(&acc, f)?;
        }
        Ok(acc)
    }

    pub fn commutator(&self, a: &UElement, b: &UElement) -> Result<UElement, AlgebraError> {
        Ok(self.multiply(a, b)?.sub(&self.multiply(b, a)?))
    }

    /// Human-readable form using basis words.
    pub fn format(&self, a: &UElement) -> String {
        if a.is_zero() {
            return "0".into();
        }
        let word = |w: &[u8], letter: char| -> String {
            w.iter()
                .map(|i| format!("{letter}{}", i + 1))
                .collect::<Vec<_>>()
                .join("")
        };
        let parts: Vec<String> = a
            .terms()
            .map(|(m, c)| {
                let f = self
                    .f_word_of(&m.f)
                    .map(|w| word(&w, 'F'))
                    .unwrap_or_default();
                let e = self
                    .e_word_of(&m.e)
                    .map(|w| word(&w, 'E'))
                    .unwrap_or_default();
                let mut s = format!("({c})");
                if !f.is_empty() {
                    s.push_str(&format!("*{f}"));
                }
                if !m.kl.k.is_zero() {
                    s.push_str(&format!("*K{:?}", m.kl.k.coords()));
                }
                if !m.kl.l.is_zero() {
                    s.push_str(&format!("*L{:?}", m.kl.l.coords()));
                }
                if !e.is_empty() {
                    s.push_str(&format!("*{e}"));
                }
                s
            })
            .collect();
        parts.join(" + ")
    }
}
