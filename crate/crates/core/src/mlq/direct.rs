use num_traits::One;

use super::{occupancies, qpow, step_weight, BallSystem, Row};
use crate::asep::{Config, Multiplicity, SectorBasis, SectorVector};
use crate::error::Result;
use crate::{Rational, RationalFunctionT};

/// One arrow of a complete multiline queue. `row` is the lower row
/// (rows numbered from the top, starting at 1); columns are 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub color: usize,
    pub row: usize,
    pub source: usize,
    pub target: usize,
    pub wrapped: bool,
    pub skipped: usize,
    pub free: usize,
}

impl Arrow {
    pub fn is_trivial(&self) -> bool {
        self.source == self.target
    }

    /// Power of `q` in the effective parameter `q^{c-r+1}`.
    pub fn q_power(&self) -> usize {
        self.color - self.row + 1
    }
}

/// A multiline queue: its ball system (top row last), all arrows in the
/// order they are drawn, and the configuration read off the bottom row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Queue {
    pub rows: Vec<Row>,
    pub arrows: Vec<Arrow>,
    pub config: Config,
}

impl Queue {
    pub fn weight(&self, q: &Rational) -> RationalFunctionT {
        self.arrows
            .iter()
            .filter(|a| !a.is_trivial())
            .fold(RationalFunctionT::one(), |acc, a| {
                acc * step_weight(a.wrapped, a.skipped, a.free, &qpow(q, a.q_power()))
            })
    }
}

/// Every multiline queue of a basic sector, built round by round.
pub fn mlq_queues(m: &Multiplicity) -> Result<Vec<Queue>> {
    let mut out = Vec::new();
    for_each_queue(m, |q| out.push(q))?;
    Ok(out)
}

/// `Σ_Q wt(Q) |π(Q)⟩` by explicit enumeration of multiline queues.
pub fn mlq_enumerate_direct(m: &Multiplicity, q: &Rational) -> Result<SectorVector> {
    let mut out = SectorVector::zeros(SectorBasis::new(m));
    for_each_queue(m, |queue| {
        let k = out.basis.index_of(&queue.config).expect("queue lands in its sector");
        out.values[k] = &out.values[k] + &queue.weight(q);
    })?;
    Ok(out)
}

fn for_each_queue(m: &Multiplicity, mut f: impl FnMut(Queue)) -> Result<()> {
    let occ = occupancies(m)?;
    let mut systems: Vec<Vec<Row>> = vec![Vec::new()];
    for &l in &occ {
        let rows = Row::all(m.len(), l);
        systems = systems
            .into_iter()
            .flat_map(|pre| {
                rows.iter().map(move |r| {
                    let mut v = pre.clone();
                    v.push(*r);
                    v
                })
            })
            .collect();
    }
    for sys in systems {
        ball_system_queues(&BallSystem::new(sys)?, &mut f);
    }
    Ok(())
}

/// The multiline queues over one ball system.
pub fn queues_of(b: &BallSystem) -> Vec<Queue> {
    let mut out = Vec::new();
    ball_system_queues(b, &mut |q| out.push(q));
    out
}

fn ball_system_queues(b: &BallSystem, f: &mut dyn FnMut(Queue)) {
    let n = b.rows().len();
    let len = b.len();
    // rows[r] is row r counted from the top; index 0 unused
    let mut rows = vec![Vec::new(); n + 1];
    for (k, r) in b.rows().iter().enumerate() {
        rows[n - k] = (0..len).map(|c| r.has(c)).collect();
    }
    let state = Walk { len, rows, arrows: Vec::new(), colors: vec![0; len] };
    round(state, n, &mut |w| {
        f(Queue {
            rows: b.rows().to_vec(),
            arrows: w.arrows.clone(),
            config: Config(w.colors.clone()),
        })
    });
}

#[derive(Clone)]
struct Walk {
    len: usize,
    rows: Vec<Vec<bool>>,
    arrows: Vec<Arrow>,
    colors: Vec<u8>,
}

/// Round for color `c`: the remaining balls of row `c` travel down to
/// row 1, then everything they captured is removed.
fn round(w: Walk, c: usize, emit: &mut dyn FnMut(&Walk)) {
    if c == 1 {
        let mut w = w;
        for col in 0..w.len {
            if w.rows[1][col] {
                w.colors[col] = 1;
            }
        }
        emit(&w);
        return;
    }
    let sources: Vec<usize> = (0..w.len).filter(|&x| w.rows[c][x]).collect();
    descend(w, c, c, sources, Vec::new(), emit);
}

/// Pair `sources` (balls of row `r`, left to right) into row `r - 1`.
fn descend(w: Walk, c: usize, r: usize, sources: Vec<usize>, images: Vec<usize>, emit: &mut dyn FnMut(&Walk)) {
    if images.len() == sources.len() {
        let mut w = w;
        let mut next: Vec<usize> = images;
        next.sort_unstable();
        for &col in &next {
            w.rows[r - 1][col] = false;
        }
        if r - 1 == 1 {
            for &col in &next {
                w.colors[col] = c as u8;
            }
            for col in 0..w.len {
                w.rows[c][col] = false;
            }
            round(w, c - 1, emit);
        } else {
            descend(w, c, r - 1, next, Vec::new(), emit);
        }
        return;
    }
    let s = sources[images.len()];
    let upper = &w.rows[r - 1];
    let free: Vec<usize> = (0..w.len).filter(|&x| upper[x] && !images.contains(&x)).collect();
    let choices = if free.contains(&s) { vec![s] } else { free.clone() };
    for t in choices {
        let (wrapped, skipped) = if t == s {
            (false, 0)
        } else {
            walk_left(w.len, s, t, |x| upper[x] && !images.contains(&x))
        };
        let mut w2 = w.clone();
        w2.arrows.push(Arrow { color: c, row: r, source: s, target: t, wrapped, skipped, free: free.len() });
        let mut im = images.clone();
        im.push(t);
        descend(w2, c, r, sources.clone(), im, emit);
    }
}

/// Step leftward from `s` to `t`, counting free columns strictly between.
fn walk_left(len: usize, s: usize, t: usize, is_free: impl Fn(usize) -> bool) -> (bool, usize) {
    let (mut x, mut wrapped, mut skipped) = (s, false, 0);
    loop {
        x = if x == 0 {
            wrapped = true;
            len - 1
        } else {
            x - 1
        };
        if x == t {
            return (wrapped, skipped);
        }
        if is_free(x) {
            skipped += 1;
        }
    }
}

impl Queue {
    /// True when every arrow is trivial.
    pub fn is_trivial(&self) -> bool {
        self.arrows.iter().all(Arrow::is_trivial)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mlq::{big_m_apply, mlq_state, project_pi};
    use num_traits::Zero;
    use crate::scalar::Field;

    fn r(a: i64, b: i64) -> Rational {
        Rational::new(a.into(), b.into())
    }

    fn closed(q: &Rational, w: i64, s: i64, f: i64) -> RationalFunctionT {
        let t = RationalFunctionT::t();
        let one = RationalFunctionT::one();
        let qq = RationalFunctionT::constant(q.clone());
        qq.powi(w) * t.powi(s) * (&one - &t) / (&one - &(&qq * &t.powi(f)))
    }

    fn example_system() -> BallSystem {
        let rows = ["001010000", "110100010", "011111101"].iter().map(|s| s.parse().unwrap()).collect();
        BallSystem::new(rows).unwrap()
    }

    #[test]
    fn example_queue_weight() {
        let q = r(3, 7);
        let b = example_system();
        let target: Config = "021323101".parse().unwrap();
        let qs: Vec<Queue> = queues_of(&b).into_iter().filter(|x| x.config == target).collect();
        let expected = closed(&q, 1, 2, 4) * closed(&q, 0, 0, 3) * closed(&(&q * &q), 0, 1, 6) * closed(&q, 1, 2, 5);
        assert!(qs.iter().any(|x| x.weight(&q) == expected));

        // the operator composition on the same ball system collects the
        // weights of every queue with the same colored bottom row
        let v = big_m_apply(&q, &b).unwrap();
        let s = project_pi(&v).unwrap();
        let total = qs.iter().fold(RationalFunctionT::zero(), |acc, x| acc + x.weight(&q));
        assert_eq!(s.get(&target).unwrap(), &total);
        let mut direct = vec![RationalFunctionT::zero(); s.basis.len()];
        for x in queues_of(&b) {
            let k = s.basis.index_of(&x.config).unwrap();
            direct[k] = &direct[k] + &x.weight(&q);
        }
        assert_eq!(s.values, direct);
    }

    #[test]
    fn small_sector_weight_table() {
        let q = r(2, 9);
        let m = Multiplicity::new(vec![1, 2, 1]);
        let v = mlq_enumerate_direct(&m, &q).unwrap();
        let at = |s: &str| v.get(&s.parse().unwrap()).unwrap().clone();
        let one = RationalFunctionT::one();
        assert_eq!(at("1012"), &one + &closed(&q, 1, 1, 3));
        assert_eq!(at("1021"), &one + &closed(&q, 1, 2, 3));
        assert_eq!(at("2011"), &one + &closed(&q, 0, 0, 3));
    }

    #[test]
    fn agrees_with_operator_composition() {
        let q = r(-5, 3);
        for m in [vec![1, 2, 1], vec![2, 1, 1], vec![1, 1, 1, 1], vec![1, 1, 2, 1]] {
            let m = Multiplicity::new(m);
            let a = mlq_enumerate_direct(&m, &q).unwrap();
            let b = mlq_state(&m, &q).unwrap();
            assert_eq!(a.values, b.values, "{m:?}");
        }
    }

    #[test]
    fn one_species_is_uniform() {
        let v = mlq_enumerate_direct(&Multiplicity::new(vec![3, 2]), &r(1, 2)).unwrap();
        assert!(v.values.iter().all(|x| x.is_one()));
        assert!(mlq_queues(&Multiplicity::new(vec![3, 2])).unwrap().iter().all(Queue::is_trivial));
    }
}
