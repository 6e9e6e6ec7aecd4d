#![allow(dead_code)]

use asepx::asep::{canonicalize_polys, cyclic_shift, Config, Multiplicity, SectorBasis};
use asepx::PolyT;

pub fn p(cs: &[i64]) -> PolyT {
    PolyT::from_ints(cs)
}

pub fn cfg(s: &str) -> Config {
    s.parse().unwrap()
}

/// Published cyclic-class representatives `(coefficient, configuration)`.
pub fn xi_table() -> Vec<(Vec<usize>, Vec<(PolyT, &'static str)>)> {
    let one_plus_t_cubed_3 = &p(&[1, 1]).pow(3) * &p(&[3]);
    vec![
        (vec![1, 1, 1], vec![(p(&[2, 1]), "012"), (p(&[1, 2]), "021")]),
        (
            vec![2, 1, 1],
            vec![(p(&[3, 1]), "0012"), (p(&[2, 2]), "0102"), (p(&[1, 3]), "1002")],
        ),
        (
            vec![1, 2, 1],
            vec![(p(&[2, 1, 1]), "0112"), (p(&[1, 2, 1]), "1012"), (p(&[1, 1, 2]), "1102")],
        ),
        (
            vec![1, 1, 2],
            vec![(p(&[3, 1]), "1220"), (p(&[2, 2]), "2120"), (p(&[1, 3]), "2210")],
        ),
        (
            vec![1, 2, 2],
            vec![
                (p(&[3, 1, 1]), "11220"),
                (p(&[2, 1, 2]), "12120"),
                (p(&[1, 3, 1]), "12210"),
                (p(&[2, 1, 2]), "21120"),
                (p(&[1, 2, 2]), "21210"),
                (p(&[1, 1, 3]), "22110"),
            ],
        ),
        (
            vec![2, 1, 2],
            vec![
                (p(&[1, 6, 7, 6]), "00221"),
                (p(&[2, 7, 6, 5]), "02021"),
                (&p(&[1, 1]) * &p(&[3, 4, 3]), "02201"),
                (&p(&[1, 1]) * &p(&[3, 4, 3]), "20021"),
                (p(&[5, 6, 7, 2]), "20201"),
                (p(&[6, 7, 6, 1]), "22001"),
            ],
        ),
        (
            vec![2, 2, 1],
            vec![
                (p(&[3, 1, 1]), "00112"),
                (p(&[2, 2, 1]), "01012"),
                (p(&[2, 1, 2]), "01102"),
                (p(&[1, 3, 1]), "10012"),
                (p(&[1, 2, 2]), "10102"),
                (p(&[1, 1, 3]), "11002"),
            ],
        ),
        (
            vec![1, 1, 1, 1],
            vec![
                (p(&[9, 7, 7, 1]), "0123"),
                (p(&[3, 11, 5, 5]), "0213"),
                (one_plus_t_cubed_3.clone(), "1023"),
                (p(&[5, 5, 11, 3]), "1203"),
                (one_plus_t_cubed_3, "2013"),
                (p(&[1, 7, 7, 9]), "2103"),
            ],
        ),
    ]
}

/// The published `|12120⟩` coefficient of the `(1,2,2)` vector, `2+t+2t^2`,
/// is not stationary; `2+2t+t^2` is. Returns the table with that entry
/// replaced.
pub fn xi_table_corrected() -> Vec<(Vec<usize>, Vec<(PolyT, &'static str)>)> {
    let mut table = xi_table();
    for (m, reps) in table.iter_mut() {
        if *m == [1, 2, 2] {
            for (coef, s) in reps.iter_mut() {
                if *s == "12120" {
                    *coef = p(&[2, 2, 1]);
                }
            }
        }
    }
    table
}

/// `ξ + Cξ + … + C^{L-1}ξ` over the lexicographic basis, canonicalized.
pub fn expand_classes(m: &Multiplicity, reps: &[(PolyT, &str)]) -> Vec<PolyT> {
    canonicalize_polys(expand_raw(m, reps)).unwrap()
}

pub fn expand_raw(m: &Multiplicity, reps: &[(PolyT, &str)]) -> Vec<PolyT> {
    let basis = SectorBasis::new(m);
    let mut v = vec![PolyT::zero(); basis.len()];
    for (coef, s) in reps {
        let mut c = cfg(s);
        for _ in 0..m.len() {
            let k = basis.index_of(&c).expect("representative in sector");
            v[k] = &v[k] + coef;
            c = cyclic_shift(&c);
        }
    }
    v
}

/// Every basic sector with `n <= max_n`, `L <= max_len`.
pub fn basic_sectors(max_n: usize, max_len: usize) -> Vec<Multiplicity> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for len in n + 1..=max_len {
            compositions(len, n + 1, &mut Vec::new(), &mut out);
        }
    }
    out
}

fn compositions(rest: usize, parts: usize, cur: &mut Vec<usize>, out: &mut Vec<Multiplicity>) {
    if parts == 1 {
        if rest >= 1 {
            cur.push(rest);
            out.push(Multiplicity::new(cur.clone()));
            cur.pop();
        }
        return;
    }
    for k in 1..rest {
        cur.push(k);
        compositions(rest - k, parts - 1, cur, out);
        cur.pop();
    }
}
