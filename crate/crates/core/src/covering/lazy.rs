use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::{position, vertex_id, CoverError, CoverTotal, CoveringComplex, Sheets};
use crate::complex::{Exhaustion, FiniteComplex, GeneratedStage, Simplex, VertexId};
use crate::group::{edge_path_presentation, todd_coxeter, CosetTable, EdgePathPresentation, Letter, Word};
use crate::homology::{smith_normal_form, IntegerMatrix};

/// How coset equality is decided while generating a lazy cover.
#[derive(Clone, Debug)]
pub enum Rewriting {
    /// Free reduction; only for presentations without relators and the
    /// trivial subgroup.
    Free,
    /// The caller asserts the group is abelian; cosets are compared in
    /// `ℤ^g` modulo relators and subgroup generators.
    Abelian,
    /// A complete coset table for the subgroup.
    Table(CosetTable),
    /// A confluent, terminating rewriting system for the group, asserted by
    /// the caller; the subgroup must rewrite to the trivial one.
    Rules(Vec<(Word, Word)>),
    /// Fall back to coset enumeration within the given budget.
    None { budget: usize },
}

const REWRITE_STEPS: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Key {
    Word(Word),
    Vector(Vec<BigInt>),
    Coset(usize),
}

#[derive(Clone, Debug)]
enum Oracle {
    Free,
    Abelian { u: IntegerMatrix, invariants: Vec<BigInt> },
    Table(CosetTable),
    Rules(Vec<(Word, Word)>),
}

impl Oracle {
    fn identity(&self, generators: usize) -> Key {
        match self {
            Oracle::Free | Oracle::Rules(_) => Key::Word(Word::empty()),
            Oracle::Abelian { .. } => Key::Vector(vec![BigInt::zero(); generators]),
            Oracle::Table(_) => Key::Coset(0),
        }
    }

    fn step(&self, key: &Key, l: Letter) -> Result<Key, CoverError> {
        Ok(match (self, key) {
            (Oracle::Free, Key::Word(w)) => {
                let mut w = w.clone();
                w.push(l);
                Key::Word(w)
            }
            (Oracle::Rules(rules), Key::Word(w)) => {
                let mut w = w.clone();
                w.push(l);
                Key::Word(rewrite(rules, w)?)
            }
            (Oracle::Abelian { u, invariants }, Key::Vector(v)) => {
                let mut v = v.clone();
                for (i, vi) in v.iter_mut().enumerate() {
                    *vi += &u[(i, l.gen)] * l.exponent();
                    if let Some(d) = invariants.get(i) {
                        *vi = vi.mod_floor(d);
                    }
                }
                Key::Vector(v)
            }
            (Oracle::Table(t), Key::Coset(c)) => {
                Key::Coset(t.entry(*c, l).ok_or(CoverError::InvalidTable)?)
            }
            _ => unreachable!("key kind matches oracle"),
        })
    }

    fn step_word(&self, key: &Key, w: &Word) -> Result<Key, CoverError> {
        w.letters().iter().try_fold(key.clone(), |k, &l| self.step(&k, l))
    }
}

/// Leftmost-first rewriting to a normal form.
fn rewrite(rules: &[(Word, Word)], mut w: Word) -> Result<Word, CoverError> {
    for _ in 0..REWRITE_STEPS {
        let letters = w.letters();
        let hit = (0..letters.len()).find_map(|i| {
            rules.iter().find_map(|(lhs, rhs)| {
                let n = lhs.len();
                (n > 0 && i + n <= letters.len() && &letters[i..i + n] == lhs.letters())
                    .then(|| (i, n, rhs))
            })
        });
        let Some((i, n, rhs)) = hit else {
            return Ok(w);
        };
        let next = Word::from_letters(
            letters[..i]
                .iter()
                .copied()
                .chain(rhs.letters().iter().copied())
                .chain(letters[i + n..].iter().copied()),
        );
        w = next;
    }
    Err(CoverError::RewritingDiverged(REWRITE_STEPS))
}

fn valid_table(t: &CosetTable, ep: &EdgePathPresentation, subgroup: &[Word]) -> bool {
    let p = &ep.presentation;
    t.is_complete()
        && t.generator_count() == p.generator_count()
        && (0..t.len()).all(|c| {
            (0..p.generator_count()).all(|g| {
                [false, true].iter().all(|&inv| {
                    let l = Letter::new(g, inv);
                    t.entry(c, l)
                        .is_some_and(|d| d < t.len() && t.entry(d, l.inv()) == Some(c))
                })
            }) && p.relators().iter().all(|r| t.act(c, r) == Some(c))
        })
        && subgroup.iter().all(|w| t.fixes_base(w))
}

fn oracle_for(
    ep: &EdgePathPresentation,
    subgroup: &[Word],
    rewriting: &Rewriting,
) -> Result<Oracle, CoverError> {
    let p = &ep.presentation;
    let g = p.generator_count();
    match rewriting {
        Rewriting::Free => {
            if p.relators().is_empty() && subgroup.iter().all(Word::is_empty) {
                Ok(Oracle::Free)
            } else {
                Err(CoverError::WordProblemUnresolved)
            }
        }
        Rewriting::Abelian => {
            let cols: Vec<Vec<BigInt>> = p
                .relators()
                .iter()
                .chain(subgroup)
                .map(|w| w.exponent_sums(g).into_iter().map(BigInt::from).collect())
                .collect();
            let s = smith_normal_form(&IntegerMatrix::from_columns(g, &cols));
            Ok(Oracle::Abelian {
                u: s.u,
                invariants: s.invariants,
            })
        }
        Rewriting::Table(t) => {
            if valid_table(t, ep, subgroup) {
                Ok(Oracle::Table(t.clone()))
            } else {
                Err(CoverError::InvalidTable)
            }
        }
        Rewriting::Rules(rules) => {
            for (i, r) in p.relators().iter().enumerate() {
                if !rewrite(rules, r.clone())?.is_empty() {
                    return Err(CoverError::RelatorNotTrivial(i));
                }
            }
            for w in subgroup {
                if !rewrite(rules, w.clone())?.is_empty() {
                    return Err(CoverError::WordProblemUnresolved);
                }
            }
            Ok(Oracle::Rules(rules.clone()))
        }
        Rewriting::None { budget } => {
            let t = todd_coxeter(p, subgroup, *budget);
            if t.is_complete() {
                Ok(Oracle::Table(t))
            } else {
                Err(CoverError::WordProblemUnresolved)
            }
        }
    }
}

/// Cosets within a word-length radius, in breadth-first order.
struct Ball {
    keys: Vec<Key>,
    lengths: Vec<usize>,
    index: BTreeMap<Key, usize>,
    /// Cosets at the radius with a neighbour beyond it.
    open: BTreeSet<usize>,
}

#[derive(Clone)]
struct Builder {
    base: FiniteComplex,
    ep: EdgePathPresentation,
    oracle: Oracle,
}

impl Builder {
    fn ball(&self, radius: usize) -> Result<Ball, CoverError> {
        let g = self.ep.presentation.generator_count();
        let start = self.oracle.identity(g);
        let mut ball = Ball {
            keys: vec![start.clone()],
            lengths: vec![0],
            index: BTreeMap::from([(start, 0)]),
            open: BTreeSet::new(),
        };
        let mut head = 0;
        while head < ball.keys.len() {
            let len = ball.lengths[head];
            for gen in 0..g {
                for inverse in [false, true] {
                    let next = self.oracle.step(&ball.keys[head], Letter::new(gen, inverse))?;
                    if ball.index.contains_key(&next) {
                        continue;
                    }
                    if len == radius {
                        ball.open.insert(head);
                        continue;
                    }
                    ball.index.insert(next.clone(), ball.keys.len());
                    ball.keys.push(next);
                    ball.lengths.push(len + 1);
                }
            }
            head += 1;
        }
        Ok(ball)
    }

    /// Every lift of every base simplex inside the ball, with the largest
    /// and smallest coset length among its vertices.
    fn lifts(&self, ball: &Ball) -> Result<Vec<(Simplex, usize, usize)>, CoverError> {
        let nv = self.base.count(0);
        let mut out = Vec::new();
        for sigma in self.base.iter() {
            let vs = sigma.vertices();
            for (c, key) in ball.keys.iter().enumerate() {
                let mut cosets = Vec::with_capacity(vs.len());
                for &u in vs {
                    let k = self.oracle.step_word(key, &self.ep.edge_word(vs[0], u))?;
                    match ball.index.get(&k) {
                        Some(&i) => cosets.push(i),
                        None => break,
                    }
                }
                if cosets.len() < vs.len() {
                    continue;
                }
                for i in 0..vs.len() {
                    for j in i + 1..vs.len() {
                        let k = self
                            .oracle
                            .step_word(&ball.keys[cosets[i]], &self.ep.edge_word(vs[i], vs[j]))?;
                        if ball.index.get(&k) != Some(&cosets[j]) {
                            return Err(CoverError::InconsistentLift {
                                simplex: sigma.clone(),
                                sheet: c,
                            });
                        }
                    }
                }
                let lengths = cosets.iter().map(|&i| ball.lengths[i]);
                let (lo, hi) = (lengths.clone().min().unwrap(), lengths.max().unwrap());
                let s = Simplex::new(
                    vs.iter()
                        .zip(&cosets)
                        .map(|(&u, &ci)| vertex_id(ci, position(&self.base, u), nv)),
                )
                .expect("distinct lifted vertices");
                out.push((s, lo, hi));
            }
        }
        Ok(out)
    }

    fn stage(&self, n: usize) -> Result<GeneratedStage, CoverError> {
        let ball = self.ball(n)?;
        let lifts = self.lifts(&ball)?;
        let stability = lifts
            .iter()
            .map(|(s, lo, hi)| (s.clone(), (*hi).max(lo + 1)))
            .collect();
        let complex = FiniteComplex::closure(lifts.into_iter().map(|(s, _, _)| s));
        Ok(GeneratedStage { complex, stability })
    }
}

/// Breadth-first cover out to `radius` in coset word length; stage `n` of
/// the total exhaustion holds the lifts whose cosets all have length `≤ n`.
pub fn lazy_cover(
    k: &FiniteComplex,
    v0: VertexId,
    subgroup: &[Word],
    rewriting: &Rewriting,
    radius: usize,
) -> Result<CoveringComplex, CoverError> {
    let ep = edge_path_presentation(k, v0)?;
    let oracle = oracle_for(&ep, subgroup, rewriting)?;
    let builder = Builder {
        base: k.clone(),
        ep: ep.clone(),
        oracle,
    };
    let ball = builder.ball(radius)?;
    let lifts = builder.lifts(&ball)?;
    let nv = k.count(0);

    let mut stages = Vec::with_capacity(radius + 1);
    for n in 0..=radius {
        stages.push(FiniteComplex::closure(
            lifts.iter().filter(|(_, _, hi)| *hi <= n).map(|(s, _, _)| s.clone()),
        ));
    }
    let stability: BTreeMap<Simplex, usize> = lifts
        .iter()
        .map(|(s, lo, hi)| (s.clone(), (*hi).max(lo + 1)))
        .collect();
    let gen_builder = builder.clone();
    let generator = Arc::new(move |n: usize| {
        gen_builder
            .stage(n)
            .expect("stage generation repeats a successful construction")
    });
    let total = Exhaustion::with_generator(stages, stability, generator)?;

    let mut projection = BTreeMap::new();
    let mut sheet = BTreeMap::new();
    let mut frontier = BTreeSet::new();
    for c in 0..ball.keys.len() {
        for (p, u) in k.vertices().enumerate() {
            let x = vertex_id(c, p, nv);
            if total.last().contains_vertex(x) {
                projection.insert(x, u);
                sheet.insert(x, c);
                if ball.open.contains(&c) {
                    frontier.insert(x);
                }
            }
        }
    }
    let (sheets, table) = match &builder.oracle {
        Oracle::Table(t) if ball.open.is_empty() => (Sheets::Finite(t.len()), Some(t.clone())),
        Oracle::Table(t) => (
            Sheets::Prefix {
                radius,
                cosets: ball.keys.len(),
            },
            Some(t.clone()),
        ),
        _ => (
            Sheets::Prefix {
                radius,
                cosets: ball.keys.len(),
            },
            None,
        ),
    };
    Ok(CoveringComplex {
        base: k.clone(),
        basepoint: v0,
        total: CoverTotal::Lazy(total),
        projection,
        sheet,
        sheets,
        frontier,
        edge_path: ep,
        subgroup: subgroup.to_vec(),
        table,
    })
}
