use super::{Letter, Presentation, Word};

const NONE: usize = usize::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnumerationStatus {
    Complete,
    BudgetExceeded,
}

/// Coset table of a subgroup: row `c`, column `2g` (or `2g + 1` for the
/// inverse) holds `c·g` (or `c·g⁻¹`). Coset 0 is the subgroup itself.
///
/// Rows are numbered in order of first definition. An incomplete table
/// keeps whatever partial rows survived and is not a permutation action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    generators: usize,
    rows: Vec<Vec<usize>>,
    pub status: EnumerationStatus,
    /// Most cosets alive at once during the enumeration.
    pub peak: usize,
}

impl CosetTable {
    pub fn is_complete(&self) -> bool {
        self.status == EnumerationStatus::Complete
    }

    /// Index of the subgroup, known only for complete tables.
    pub fn index(&self) -> Option<usize> {
        self.is_complete().then_some(self.rows.len())
    }

    pub fn generator_count(&self) -> usize {
        self.generators
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn entry(&self, coset: usize, l: Letter) -> Option<usize> {
        let e = self.rows[coset][l.column()];
        (e != NONE).then_some(e)
    }

    /// `c·w`, or `None` if the table is undefined along the way.
    pub fn act(&self, coset: usize, w: &Word) -> Option<usize> {
        w.letters().iter().try_fold(coset, |c, &l| self.entry(c, l))
    }

    /// Whether `w` lies in the subgroup (fixes coset 0).
    pub fn fixes_base(&self, w: &Word) -> bool {
        self.act(0, w) == Some(0)
    }

    /// Table built directly from a permutation action, one permutation per
    /// generator; used for subgroups given as preimages of a finite action.
    pub fn from_permutations(perms: &[Vec<usize>]) -> Self {
        let n = perms.first().map_or(1, Vec::len);
        let mut rows = vec![vec![NONE; 2 * perms.len()]; n];
        for (g, p) in perms.iter().enumerate() {
            for (c, &d) in p.iter().enumerate() {
                rows[c][2 * g] = d;
                rows[d][2 * g + 1] = c;
            }
        }
        CosetTable {
            generators: perms.len(),
            rows,
            status: EnumerationStatus::Complete,
            peak: n,
        }
    }
}

struct Enumerator {
    relators: Vec<Vec<usize>>,
    subgroup: Vec<Vec<usize>>,
    columns: usize,
    table: Vec<Vec<usize>>,
    forward: Vec<usize>,
    live: usize,
    peak: usize,
    budget: usize,
}

struct OutOfCosets;

impl Enumerator {
    fn is_live(&self, c: usize) -> bool {
        self.forward[c] == c
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.forward[r] != r {
            r = self.forward[r];
        }
        let mut cur = c;
        while self.forward[cur] != r {
            let next = self.forward[cur];
            self.forward[cur] = r;
            cur = next;
        }
        r
    }

    fn define(&mut self, c: usize, x: usize) -> Result<(), OutOfCosets> {
        if self.live >= self.budget {
            return Err(OutOfCosets);
        }
        let d = self.table.len();
        self.table.push(vec![NONE; self.columns]);
        self.forward.push(d);
        self.live += 1;
        self.peak = self.peak.max(self.live);
        self.table[c][x] = d;
        self.table[d][x ^ 1] = c;
        Ok(())
    }

    /// Scans `w` at `c` from both ends; fills a single gap by deduction and
    /// merges cosets when the scan closes inconsistently. With `fill`, gaps
    /// wider than one letter are bridged by new definitions.
    fn scan(&mut self, c: usize, w: &[usize], fill: bool) -> Result<(), OutOfCosets> {
        if w.is_empty() {
            return Ok(());
        }
        let mut f = c;
        let mut i = 0;
        let mut b = c;
        let mut j = w.len();
        loop {
            while i < j && self.table[f][w[i]] != NONE {
                f = self.table[f][w[i]];
                i += 1;
            }
            if i == j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j > i && self.table[b][w[j - 1] ^ 1] != NONE {
                b = self.table[b][w[j - 1] ^ 1];
                j -= 1;
            }
            if j == i {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            if j == i + 1 {
                self.table[f][w[i]] = b;
                self.table[b][w[i] ^ 1] = f;
                return Ok(());
            }
            if !fill {
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }

    fn merge(&mut self, a: usize, b: usize, queue: &mut Vec<usize>) {
        let (x, y) = (self.rep(a), self.rep(b));
        if x == y {
            return;
        }
        let (lo, hi) = (x.min(y), x.max(y));
        self.forward[hi] = lo;
        self.live -= 1;
        queue.push(hi);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut k = 0;
        while k < queue.len() {
            let g = queue[k];
            k += 1;
            for x in 0..self.columns {
                let d = self.table[g][x];
                if d == NONE {
                    continue;
                }
                self.table[g][x] = NONE;
                if self.table[d][x ^ 1] == g {
                    self.table[d][x ^ 1] = NONE;
                }
                let mu = self.rep(g);
                let nu = self.rep(d);
                if self.table[mu][x] != NONE {
                    let t = self.table[mu][x];
                    self.merge(nu, t, &mut queue);
                } else if self.table[nu][x ^ 1] != NONE {
                    let t = self.table[nu][x ^ 1];
                    self.merge(mu, t, &mut queue);
                } else {
                    self.table[mu][x] = nu;
                    self.table[nu][x ^ 1] = mu;
                }
            }
        }
    }

    /// Scans every relator at every live coset without defining anything.
    fn lookahead(&mut self) {
        let mut c = 0;
        while c < self.table.len() {
            for r in 0..self.relators.len() {
                if !self.is_live(c) {
                    break;
                }
                let w = self.relators[r].clone();
                let _ = self.scan(c, &w, false);
            }
            c += 1;
        }
    }

    fn run(&mut self) -> EnumerationStatus {
        for s in 0..self.subgroup.len() {
            let w = self.subgroup[s].clone();
            if self.scan_with_lookahead(0, &w).is_err() {
                return EnumerationStatus::BudgetExceeded;
            }
        }
        let mut c = 0;
        while c < self.table.len() {
            for r in 0..self.relators.len() {
                if !self.is_live(c) {
                    break;
                }
                let w = self.relators[r].clone();
                if self.scan_with_lookahead(c, &w).is_err() {
                    return EnumerationStatus::BudgetExceeded;
                }
            }
            for x in 0..self.columns {
                if !self.is_live(c) {
                    break;
                }
                if self.table[c][x] == NONE && self.define_with_lookahead(c, x).is_err() {
                    return EnumerationStatus::BudgetExceeded;
                }
            }
            c += 1;
        }
        EnumerationStatus::Complete
    }

    fn scan_with_lookahead(&mut self, c: usize, w: &[usize]) -> Result<(), OutOfCosets> {
        loop {
            match self.scan(c, w, true) {
                Ok(()) => return Ok(()),
                Err(OutOfCosets) => {
                    let before = self.live;
                    self.lookahead();
                    if self.live == before {
                        return Err(OutOfCosets);
                    }
                    if !self.is_live(c) {
                        return Ok(());
                    }
                }
            }
        }
    }

    fn define_with_lookahead(&mut self, c: usize, x: usize) -> Result<(), OutOfCosets> {
        if self.define(c, x).is_ok() {
            return Ok(());
        }
        let before = self.live;
        self.lookahead();
        if self.live == before {
            return Err(OutOfCosets);
        }
        if self.is_live(c) && self.table[c][x] == NONE {
            self.define(c, x)?;
        }
        Ok(())
    }

    /// Drops dead rows and renumbers the survivors in order.
    fn compress(self, status: EnumerationStatus, generators: usize) -> CosetTable {
        let mut new_index = vec![NONE; self.table.len()];
        let mut n = 0;
        for (c, slot) in new_index.iter_mut().enumerate() {
            if self.forward[c] == c {
                *slot = n;
                n += 1;
            }
        }
        let rows = self
            .table
            .iter()
            .enumerate()
            .filter(|&(c, _)| self.forward[c] == c)
            .map(|(_, row)| {
                row.iter()
                    .map(|&d| if d == NONE { NONE } else { new_index[d] })
                    .collect()
            })
            .collect();
        CosetTable {
            generators,
            rows,
            status,
            peak: self.peak,
        }
    }
}

/// Coset enumeration of `⟨subgroup⟩` in the group presented by `p`, HLT
/// strategy with a lookahead pass whenever `budget` live cosets are in use.
pub fn todd_coxeter(p: &Presentation, subgroup: &[Word], budget: usize) -> CosetTable {
    let columns = 2 * p.generator_count();
    let encode = |w: &Word| -> Vec<usize> { w.letters().iter().map(|l| l.column()).collect() };
    let mut e = Enumerator {
        relators: p
            .relators()
            .iter()
            .map(|r| encode(&r.cyclically_reduced()))
            .filter(|r| !r.is_empty())
            .collect(),
        subgroup: subgroup.iter().map(encode).collect(),
        columns,
        table: vec![vec![NONE; columns]],
        forward: vec![0],
        live: 1,
        peak: 1,
        budget: budget.max(1),
    };
    let status = if budget == 0 {
        EnumerationStatus::BudgetExceeded
    } else {
        e.run()
    };
    e.compress(status, p.generator_count())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(text: &str) -> Presentation {
        Presentation::parse(text).unwrap()
    }

    #[test]
    fn infinite_cyclic_modulo_square() {
        let p = pres("GEN a\n");
        let t = todd_coxeter(&p, &[p.parse_word("a a").unwrap()], 100);
        assert_eq!(t.index(), Some(2));
    }

    #[test]
    fn whole_group_has_index_one() {
        let p = pres("GEN a b\nREL a b A B\n");
        let gens = [Word::gen(0), Word::gen(1)];
        assert_eq!(todd_coxeter(&p, &gens, 10).index(), Some(1));
    }

    #[test]
    fn trivial_subgroup_of_z_exceeds_budget() {
        let p = pres("GEN a\n");
        let t = todd_coxeter(&p, &[], 50);
        assert_eq!(t.status, EnumerationStatus::BudgetExceeded);
        assert_eq!(t.index(), None);
    }

    #[test]
    fn finite_groups_orders() {
        // ⟨a | a⁴⟩ with L = ⟨a²⟩: index 2, and |G| = 4.
        let p = pres("GEN a\nREL a a a a\n");
        assert_eq!(todd_coxeter(&p, &[p.parse_word("a a").unwrap()], 100).index(), Some(2));
        assert_eq!(todd_coxeter(&p, &[], 100).index(), Some(4));
        // S3 = ⟨a, b | a², b³, (ab)²⟩.
        let s3 = pres("GEN a b\nREL a a\nREL b b b\nREL a b a b\n");
        assert_eq!(todd_coxeter(&s3, &[], 100).index(), Some(6));
        assert_eq!(todd_coxeter(&s3, &[Word::gen(0)], 100).index(), Some(3));
        // A5 as the (2,3,5) triangle group has order 60.
        let a5 = pres("GEN a b\nREL a a\nREL b b b\nREL a b a b a b a b a b\n");
        assert_eq!(todd_coxeter(&a5, &[], 1000).index(), Some(60));
    }

    #[test]
    fn complete_table_is_consistent() {
        let s3 = pres("GEN a b\nREL a a\nREL b b b\nREL a b a b\n");
        let t = todd_coxeter(&s3, &[Word::gen(0)], 100);
        for c in 0..t.len() {
            for r in s3.relators() {
                assert_eq!(t.act(c, r), Some(c));
            }
            for g in 0..2 {
                let d = t.entry(c, Letter::new(g, false)).unwrap();
                assert_eq!(t.entry(d, Letter::new(g, true)), Some(c));
            }
        }
        assert!(t.fixes_base(&Word::gen(0)));
    }

    #[test]
    fn trivial_group_collapses() {
        // a = 1 forces b = 1 through the second relator.
        let p = pres("GEN a b\nREL a\nREL a b\n");
        assert_eq!(todd_coxeter(&p, &[], 10).index(), Some(1));
        // With a = 1 the relator b a b leaves ℤ/2.
        let p = pres("GEN a b\nREL a\nREL b a b\n");
        assert_eq!(todd_coxeter(&p, &[], 10).index(), Some(2));
    }

    #[test]
    fn tight_budget_relies_on_lookahead() {
        let s3 = pres("GEN a b\nREL a a\nREL b b b\nREL a b a b\n");
        let t = todd_coxeter(&s3, &[], 6);
        assert_eq!(t.index(), Some(6));
        assert!(t.peak <= 6);
    }
}
