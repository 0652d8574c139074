//! Random databases and brute-force reference implementations.
//!
//! The references never touch the library beyond building the database:
//! every count is taken by scanning transaction bitmasks, and every ratio
//! comparison is done in exact integer arithmetic.

#![allow(dead_code)]

use std::collections::BTreeSet;

use itemlattice::miners::MiningParams;
use itemlattice::{Pattern, Threshold, TransactionDatabase};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Mask = u32;

#[derive(Debug)]
pub struct RandomDb {
    pub k: usize,
    pub rows: Vec<Mask>,
    pub db: TransactionDatabase,
}

pub fn label(i: usize) -> String {
    format!("i{i:02}")
}

impl RandomDb {
    pub fn from_rows(k: usize, rows: Vec<Mask>) -> Self {
        let order: Vec<usize> = (0..k).collect();
        Self::labelled(k, rows, &order)
    }

    /// Up to `max_items` items and `max_rows` transactions, each item
    /// present in a transaction with a per-database probability.
    pub fn generate(seed: u64, max_items: usize, max_rows: usize) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = rng.gen_range(1..=max_items);
        let n = rng.gen_range(1..=max_rows);
        let density: f64 = rng.gen_range(0.1..0.9);
        // Shuffle which item appears first so ids disagree with label order.
        let mut order: Vec<usize> = (0..k).collect();
        for i in (1..k).rev() {
            order.swap(i, rng.gen_range(0..=i));
        }
        let rows = (0..n)
            .map(|_| {
                order
                    .iter()
                    .filter(|_| rng.gen_bool(density))
                    .fold(0, |m, &i| m | (1 << i))
            })
            .collect();
        Self::labelled(k, rows, &order)
    }

    fn labelled(k: usize, rows: Vec<Mask>, order: &[usize]) -> Self {
        let db = TransactionDatabase::from_transactions(rows.iter().map(|&m| {
            order
                .iter()
                .filter(|&&i| m & (1 << i) != 0)
                .map(|&i| label(i))
                .collect::<Vec<_>>()
        }));
        RandomDb { k, rows, db }
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn count(&self, set: Mask) -> usize {
        self.rows.iter().filter(|&&r| r & set == set).count()
    }

    pub fn item_count(&self, i: usize) -> usize {
        self.count(1 << i)
    }

    pub fn mask_of(&self, pattern: &Pattern) -> Mask {
        pattern.iter().fold(0, |m, id| {
            let l = self.db.label(id);
            m | 1 << l[1..].parse::<usize>().expect("generated label")
        })
    }

    pub fn pattern_of(&self, mask: Mask) -> Pattern {
        self.db
            .pattern((0..self.k).filter(|&i| mask & (1 << i) != 0).map(label))
            .expect("item occurs")
    }

    /// Items that occur at least once.
    pub fn present(&self) -> Mask {
        self.rows.iter().fold(0, |m, &r| m | r)
    }

    pub fn all_masks(&self) -> impl Iterator<Item = Mask> {
        1..(1 << self.k)
    }
}

pub fn bits(m: Mask) -> impl Iterator<Item = usize> {
    (0..32).filter(move |&i| m & (1 << i) != 0)
}

pub fn len(m: Mask) -> usize {
    m.count_ones() as usize
}

/// Non-empty proper subsets of `m`.
pub fn proper_subsets(m: Mask) -> impl Iterator<Item = Mask> {
    let mut s = m;
    std::iter::from_fn(move || {
        s = (s.wrapping_sub(1)) & m;
        (s != 0).then_some(s)
    })
}

fn parts(t: Threshold) -> (u128, u128) {
    let r = t.ratio();
    (r.num, r.den)
}

/// `count / n >= t`.
pub fn ge(t: Threshold, count: usize, n: usize) -> bool {
    let (num, den) = parts(t);
    count as u128 * den >= num * n as u128
}

/// `count / n < t`.
pub fn lt(t: Threshold, count: usize, n: usize) -> bool {
    !ge(t, count, n)
}

pub fn frequent(db: &RandomDb, minsup: Threshold) -> BTreeSet<(Mask, usize)> {
    db.all_masks()
        .map(|m| (m, db.count(m)))
        .filter(|&(_, c)| c > 0 && ge(minsup, c, db.n()))
        .collect()
}

pub fn closed(db: &RandomDb, minsup: Threshold) -> BTreeSet<Mask> {
    frequent(db, minsup)
        .into_iter()
        .filter(|&(m, c)| (0..db.k).all(|i| m & (1 << i) != 0 || db.count(m | 1 << i) != c))
        .map(|(m, _)| m)
        .collect()
}

pub fn maximal(db: &RandomDb, minsup: Threshold) -> BTreeSet<Mask> {
    frequent(db, minsup)
        .into_iter()
        .filter(|&(m, _)| {
            (0..db.k).all(|i| m & (1 << i) != 0 || {
                let c = db.count(m | 1 << i);
                c == 0 || lt(minsup, c, db.n())
            })
        })
        .map(|(m, _)| m)
        .collect()
}

fn pair_frequent(db: &RandomDb, minsup: Threshold, a: usize, b: usize) -> bool {
    let c = db.count(1 << a | 1 << b);
    c > 0 && ge(minsup, c, db.n())
}

fn item_frequent(db: &RandomDb, minsup: Threshold, a: usize) -> bool {
    let c = db.item_count(a);
    c > 0 && ge(minsup, c, db.n())
}

/// Inclusion-maximal sets of frequent items whose every pair is frequent.
pub fn cliques(db: &RandomDb, minsup: Threshold) -> BTreeSet<Mask> {
    let is_clique = |m: Mask| {
        bits(m).all(|a| item_frequent(db, minsup, a)) && bits(m).all(|a| bits(m).all(|b| a >= b || pair_frequent(db, minsup, a, b)))
    };
    let all: Vec<Mask> = db.all_masks().filter(|&m| is_clique(m)).collect();
    all.iter()
        .copied()
        .filter(|&m| !all.iter().any(|&o| o != m && o & m == m))
        .collect()
}

/// Unordered side pairs, each as `(smaller mask, larger mask)`.
pub fn bicliques(db: &RandomDb, minsup: Threshold, min_side: usize) -> BTreeSet<(Mask, Mask)> {
    let valid = |w: Mask, v: Mask| {
        bits(w).all(|a| bits(v).all(|b| pair_frequent(db, minsup, a, b)))
            && [w, v].iter().all(|&s| bits(s).all(|a| bits(s).all(|b| a >= b || !pair_frequent(db, minsup, a, b))))
    };
    let mut out = BTreeSet::new();
    let k = db.k;
    let mut assign = vec![0u8; k];
    // Every assignment of items to W (1), V (2) or neither (0).
    loop {
        let w: Mask = (0..k).filter(|&i| assign[i] == 1).fold(0, |m, i| m | 1 << i);
        let v: Mask = (0..k).filter(|&i| assign[i] == 2).fold(0, |m, i| m | 1 << i);
        if w != 0 && v != 0 && len(w) >= min_side && len(v) >= min_side && valid(w, v) {
            let free = (0..k).filter(|&i| assign[i] == 0);
            let extendable = free.clone().any(|i| valid(w | 1 << i, v) || valid(w, v | 1 << i));
            if !extendable {
                out.insert((w.min(v), w.max(v)));
            }
        }
        let Some(pos) = (0..k).find(|&i| assign[i] < 2) else { break };
        assign[pos] += 1;
        for a in assign.iter_mut().take(pos) {
            *a = 0;
        }
    }
    out
}

/// `d(P, Q) >= t` with `d = supp(P ∪ Q) / (supp(P) supp(Q))`, false when
/// either support is zero.
pub fn dependence_ge(db: &RandomDb, t: Threshold, p: Mask, q: Mask) -> bool {
    let (cp, cq, cpq, n) = (db.count(p), db.count(q), db.count(p | q), db.n());
    if cp == 0 || cq == 0 {
        return false;
    }
    let (num, den) = parts(t);
    cpq as u128 * n as u128 * den >= num * cp as u128 * cq as u128
}

fn candidate(db: &RandomDb, params: &MiningParams, x: usize, m: Mask) -> bool {
    m & (1 << x) == 0 && {
        let c = db.count(m | 1 << x);
        c > 0 && ge(params.t_f, c, db.n()) && dependence_ge(db, params.t_d, 1 << x, m)
    }
}

fn rare(db: &RandomDb, params: &MiningParams, a: usize, b: usize) -> bool {
    lt(params.t_s, db.count(1 << a | 1 << b), db.n())
}

/// `(pair, mediator)` for every indirect association with the default
/// dependence measure.
pub fn indirect(db: &RandomDb, params: &MiningParams) -> BTreeSet<(Mask, Mask)> {
    let mut out = BTreeSet::new();
    for m in db.all_masks().filter(|&m| len(m) <= params.max_mediator_len) {
        for a in 0..db.k {
            for b in a + 1..db.k {
                if candidate(db, params, a, m) && candidate(db, params, b, m) && rare(db, params, a, b) {
                    out.insert((1 << a | 1 << b, m));
                }
            }
        }
    }
    out
}

/// `(center, leaves)` for every star pattern.
pub fn stars(db: &RandomDb, params: &MiningParams) -> BTreeSet<(Mask, Mask)> {
    let mut out = BTreeSet::new();
    for m in db.all_masks().filter(|&m| len(m) <= params.max_mediator_len) {
        let cands: Mask = (0..db.k).filter(|&x| candidate(db, params, x, m)).fold(0, |acc, x| acc | 1 << x);
        let pairwise_rare = |s: Mask| bits(s).all(|a| bits(s).all(|b| a >= b || rare(db, params, a, b)));
        let family: Vec<Mask> = (1..=cands).filter(|&s| s & !cands == 0 && len(s) >= 2 && pairwise_rare(s)).collect();
        for &s in &family {
            if !family.iter().any(|&o| o != s && o & s == s) {
                out.insert((m, s));
            }
        }
    }
    out
}

/// `lift(S) >= t` exactly; false when any item of `S` never occurs.
pub fn lift_ge(db: &RandomDb, t: Threshold, s: Mask) -> bool {
    let n = db.n() as u128;
    let mut denominator: u128 = 1;
    for i in bits(s) {
        let c = db.item_count(i) as u128;
        if c == 0 {
            return false;
        }
        denominator *= c;
    }
    let (num, den) = parts(t);
    db.count(s) as u128 * n.pow(len(s) as u32 - 1) * den >= num * denominator
}

pub fn lift_defined(db: &RandomDb, s: Mask) -> bool {
    bits(s).all(|i| db.item_count(i) > 0)
}

pub fn all_correlation(db: &RandomDb, t: Threshold, max_len: usize) -> BTreeSet<Mask> {
    db.all_masks()
        .filter(|&m| (2..=max_len).contains(&len(m)))
        .filter(|&m| lift_ge(db, t, m) && proper_subsets(m).filter(|&s| len(s) >= 2).all(|s| lift_ge(db, t, s)))
        .collect()
}

pub fn unexpected_correlation(db: &RandomDb, t: Threshold, max_len: usize, min_len: usize) -> BTreeSet<Mask> {
    db.all_masks()
        .filter(|&m| (min_len..=max_len).contains(&len(m)))
        .filter(|&m| {
            lift_ge(db, t, m)
                && proper_subsets(m)
                    .filter(|&s| len(s) >= 2)
                    .all(|s| lift_defined(db, s) && !lift_ge(db, t, s))
        })
        .collect()
}

pub fn db_from(text: &str) -> TransactionDatabase {
    TransactionDatabase::parse_basket(text).expect("fixture parses")
}

pub const DB1: &str = "a b\na b c\nb c\na c\n";
pub const DB2: &str = "a c\na c\na c\nb c\nb c\nb c\n";
pub const DB3: &str = "a b\nb c\na c\n";
pub const DB4: &str = "a c\na d\nb c\nb d\n";
pub const DB5: &str = "a b c\na\nb\nc\na\nb\nc\nd\n";
pub const DB6: &str = "a b\na b\na b c\n";
pub const DB7: &str = "a c\na c\nb c\nb c\ne c\ne c\n";

pub fn t(s: &str) -> Threshold {
    s.parse().expect("threshold literal")
}
