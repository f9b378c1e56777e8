use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use super::{AdmissibleSubset, ComplexError, FiniteComplex, Simplex, VertexId};
use crate::dsu::DisjointSets;

/// One stage produced on demand, together with stability declarations for
/// the simplices it introduces.
#[derive(Clone, Debug)]
pub struct GeneratedStage {
    pub complex: FiniteComplex,
    pub stability: Vec<(Simplex, usize)>,
}

/// Source of further stages beyond the materialized prefix.
pub trait StageGenerator: Send + Sync {
    fn stage(&self, n: usize) -> GeneratedStage;
}

impl<F> StageGenerator for F
where
    F: Fn(usize) -> GeneratedStage + Send + Sync,
{
    fn stage(&self, n: usize) -> GeneratedStage {
        self(n)
    }
}

/// Nested sequence `K_0 ⊆ K_1 ⊆ …` of finite complexes with a star-stability
/// certificate: for every simplex `σ`, the star of `σ` is the same in every
/// stage from `stability[σ]` onward.
///
/// Only a finite prefix is materialized. The certificate is checked against
/// that prefix on construction and again whenever the prefix is extended.
#[derive(Clone)]
pub struct Exhaustion {
    stages: Vec<FiniteComplex>,
    stability: BTreeMap<Simplex, usize>,
    birth: BTreeMap<Simplex, usize>,
    generator: Option<Arc<dyn StageGenerator>>,
}

impl fmt::Debug for Exhaustion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Exhaustion")
            .field("stages", &self.stages.len())
            .field("simplices", &self.birth.len())
            .field("generator", &self.generator.is_some())
            .finish()
    }
}

impl PartialEq for Exhaustion {
    fn eq(&self, other: &Self) -> bool {
        self.stages == other.stages && self.stability == other.stability
    }
}

impl Exhaustion {
    /// Validates nesting and the declared star stability on the given prefix.
    pub fn build(
        stages: Vec<FiniteComplex>,
        stability: BTreeMap<Simplex, usize>,
    ) -> Result<Self, ComplexError> {
        let mut x = Exhaustion {
            stages,
            stability,
            birth: BTreeMap::new(),
            generator: None,
        };
        x.validate()?;
        Ok(x)
    }

    /// Like [`Exhaustion::build`], keeping a generator for later stages.
    pub fn with_generator(
        stages: Vec<FiniteComplex>,
        stability: BTreeMap<Simplex, usize>,
        generator: Arc<dyn StageGenerator>,
    ) -> Result<Self, ComplexError> {
        let mut x = Self::build(stages, stability)?;
        x.generator = Some(generator);
        Ok(x)
    }

    /// Single-stage exhaustion of a finite complex; every star is stable at 0.
    pub fn constant(k: FiniteComplex) -> Self {
        let stability = k.iter().map(|s| (s.clone(), 0)).collect();
        Self::build(vec![k], stability).expect("constant exhaustion is valid")
    }

    /// Returns an exhaustion with at least `count` materialized stages.
    pub fn materialize(&self, count: usize) -> Result<Self, ComplexError> {
        if count <= self.stages.len() {
            return Ok(self.clone());
        }
        let gen = self
            .generator
            .as_ref()
            .ok_or(ComplexError::NoGenerator(count))?;
        let mut stages = self.stages.clone();
        let mut stability = self.stability.clone();
        for n in stages.len()..count {
            let g = gen.stage(n);
            stages.push(g.complex);
            stability.extend(g.stability);
        }
        Self::with_generator(stages, stability, gen.clone())
    }

    fn validate(&mut self) -> Result<(), ComplexError> {
        if self.stages.is_empty() {
            return Err(ComplexError::NoStages);
        }
        for (n, w) in self.stages.windows(2).enumerate() {
            if !w[0].is_subcomplex_of(&w[1]) {
                return Err(ComplexError::NotNested(n));
            }
        }
        let mut birth = BTreeMap::new();
        for (n, k) in self.stages.iter().enumerate() {
            for s in k.iter() {
                birth.entry(s.clone()).or_insert(n);
            }
        }
        // Stars only grow along a nested sequence, so comparing coface counts
        // detects any change.
        let coface_counts: Vec<HashMap<&Simplex, usize>> = self
            .stages
            .iter()
            .map(|k| {
                let mut counts: HashMap<&Simplex, usize> = HashMap::new();
                for t in k.iter() {
                    for f in t.faces() {
                        let key = k
                            .simplices(f.dim())
                            .get(k.index_of(&f).expect("face-closed"))
                            .expect("index in range");
                        *counts.entry(key).or_default() += 1;
                    }
                }
                counts
            })
            .collect();
        for (s, &b) in &birth {
            let declared = *self
                .stability
                .get(s)
                .ok_or_else(|| ComplexError::MissingStability(s.clone()))?;
            let from = declared.max(b);
            if from >= self.stages.len() {
                continue;
            }
            let base = coface_counts[from][s];
            for (m, counts) in coface_counts.iter().enumerate().skip(from + 1) {
                if counts[s] != base {
                    return Err(ComplexError::StarUnstable {
                        simplex: s.clone(),
                        stage: m,
                    });
                }
            }
        }
        self.birth = birth;
        Ok(())
    }

    pub fn stage_count(&self) -> usize {
        self.stages.len()
    }

    pub fn stage(&self, n: usize) -> &FiniteComplex {
        &self.stages[n]
    }

    pub fn stages(&self) -> &[FiniteComplex] {
        &self.stages
    }

    pub fn last(&self) -> &FiniteComplex {
        self.stages.last().expect("at least one stage")
    }

    pub fn stability(&self) -> &BTreeMap<Simplex, usize> {
        &self.stability
    }

    /// First stage containing `s`, if `s` appears in the materialized prefix.
    pub fn birth(&self, s: &Simplex) -> Option<usize> {
        self.birth.get(s).copied()
    }

    pub fn vertex_birth(&self, v: VertexId) -> Option<usize> {
        self.birth(&Simplex::vertex(v))
    }

    pub fn has_generator(&self) -> bool {
        self.generator.is_some()
    }

    /// Union-find over the 1-skeleton of every stage up to `budget`.
    pub fn colimit_components(&self, budget: usize) -> Result<ComponentReport, ComplexError> {
        if budget >= self.stages.len() {
            return Err(ComplexError::BudgetBeyondPrefix {
                budget,
                materialized: self.stages.len(),
            });
        }
        let partitions: Vec<Vec<Vec<VertexId>>> = self.stages[..=budget]
            .iter()
            .map(stage_partition)
            .collect();
        let counts: Vec<usize> = partitions.iter().map(Vec::len).collect();
        let mut last_change = None;
        for n in 1..=budget {
            if !partition_extends(&partitions[n - 1], &partitions[n]) {
                last_change = Some(n);
            }
        }
        let stable = budget == 0 || last_change != Some(budget);
        Ok(ComponentReport {
            stage: budget,
            components: partitions[budget].clone(),
            counts,
            stable,
            last_change,
        })
    }
}

fn stage_partition(k: &FiniteComplex) -> Vec<Vec<VertexId>> {
    let verts: Vec<VertexId> = k.vertices().collect();
    let mut dsu = DisjointSets::new(verts.len());
    for (u, w) in k.edges() {
        let (a, b) = (
            verts.binary_search(&u).expect("vertex"),
            verts.binary_search(&w).expect("vertex"),
        );
        dsu.union(a, b);
    }
    dsu.classes()
        .into_iter()
        .map(|c| c.into_iter().map(|i| verts[i]).collect())
        .collect()
}

/// Whether `next` has as many classes as `prev` and restricts to it.
fn partition_extends(prev: &[Vec<VertexId>], next: &[Vec<VertexId>]) -> bool {
    if prev.len() != next.len() {
        return false;
    }
    let class_of: HashMap<VertexId, usize> = next
        .iter()
        .enumerate()
        .flat_map(|(i, c)| c.iter().map(move |&v| (v, i)))
        .collect();
    let mut seen = vec![false; next.len()];
    for class in prev {
        let target = class_of[&class[0]];
        if seen[target] || class.iter().any(|v| class_of[v] != target) {
            return false;
        }
        seen[target] = true;
    }
    true
}

/// Connected components of a prefix of an exhaustion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentReport {
    pub stage: usize,
    pub components: Vec<Vec<VertexId>>,
    /// Number of components at each stage `0..=stage`.
    pub counts: Vec<usize>,
    /// Count and memberships agree between the last two stages.
    pub stable: bool,
    /// Last stage at which the partition failed to extend the previous one.
    pub last_change: Option<usize>,
}

impl ComponentReport {
    /// The `i`-th component as an admissible subset: simplices with a vertex
    /// in it. Components are clopen, so this is also face-closed.
    pub fn component_subset(&self, i: usize) -> AdmissibleSubset {
        let verts: Vec<VertexId> = self.components[i].clone();
        AdmissibleSubset::new(move |s: &Simplex| verts.binary_search(&s.vertices()[0]).is_ok())
    }
}
