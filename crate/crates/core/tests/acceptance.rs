//! The acceptance matrix: one line per criterion, nonzero exit on failure.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;
use tubular::actions::cyclic_action;
use tubular::checks::{cocycle_violation_rejected, default_presentation};
use tubular::curve::{
    coset_mult_terms, monoid_witness, positive_coset_elements, psi, psi_inverse, theta, CurveAlgebra, CurveTag,
    CurveType,
};
use tubular::field::Field;
use tubular::grading::{Deg, GradedAlgebra};
use tubular::report::{run_check, CheckReport, Params};
use tubular::string_group::WeightSeq;
use tubular::windowed::{random_equivariant, Window};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn passing(name: &str, params: &[(&str, &str)]) -> Result<CheckReport, String> {
    let p = params.iter().fold(Params::new(), |acc, (k, v)| acc.with(k, v));
    let r = run_check(name, &p).map_err(|e| format!("{name}: {e}"))?;
    ensure(r.passed(), || {
        format!("{name} {params:?}: {:?} {:?} {:?}", r.status, r.counterexample, r.error)
    })?;
    Ok(r)
}

fn curve(t: &str) -> std::sync::Arc<CurveType> {
    let tag = CurveTag::parse(t).unwrap();
    let field = Field::Rational;
    let lambda = (tag == CurveTag::T2222).then(|| field.parse_scalar("5/3").unwrap());
    CurveType::new(tag, lambda, field).unwrap()
}

fn dimension_formula() -> Outcome {
    let mut count = 0;
    for p in ["2,2,2,2", "3,3,3", "4,4,2", "6,3,2", "2,3,7", "5,4"] {
        let w = WeightSeq::parse(p).unwrap();
        let lambdas = if p == "2,2,2,2" { vec![Field::Rational.parse_scalar("5/3").unwrap()] } else { vec![] };
        let pres = default_presentation(&w, Field::Rational, &lambdas).unwrap();
        for x in w.elements_in_band(-5, 10) {
            let dim = pres.component_basis(&x).len() as i64;
            let mult = (x.phi() + 1).max(0);
            ensure(dim == mult && dim == ci_dim(&x), || format!("{p} at {x}: dim {dim}, mult {mult}"))?;
            count += 1;
        }
        let mut params = vec![("p", p), ("phi_min", "-5"), ("n_max", "10")];
        if p == "2,2,2,2" {
            params.push(("lambda", "5/3"));
        }
        passing("mult-formula", &params)?;
    }
    Ok(format!("{count} components"))
}

fn coset_sums() -> Outcome {
    for p in TUBULAR {
        let w = WeightSeq::parse(p).unwrap();
        let x1 = elem(&w, "x1");
        for n in 1..=100 {
            let sum: i64 = (0..w.lcm()).map(|j| ci_dim(&(&x1.smul(n) + &w.dualizing().smul(j)))).sum();
            ensure(sum == n, || format!("{p}, n = {n}: sum {sum}"))?;
        }
        passing("lemma-7-1", &[("p", p), ("n_max", "100")])?;
    }
    let w = WeightSeq::parse("6,3,2").unwrap();
    ensure(coset_mult_terms(&w, 4).unwrap() == [1, 0, 1, 1, 1, 0], || "n = 4 terms".into())?;
    ensure(coset_mult_terms(&w, 5).unwrap() == [1, 0, 1, 1, 1, 1], || "n = 5 terms".into())?;
    Ok("n <= 100 on four types".into())
}

const COSET_GENERATORS: [(&str, &[(i64, &str)]); 4] = [
    ("2,2,2,2", &[(0, "3*x1"), (1, "x2 + x3 + x4")]),
    ("3,3,3", &[(0, "3*x1"), (2, "x1 + x2 + x3")]),
    ("4,4,2", &[(0, "3*x1"), (2, "x1 + 2*x2"), (3, "x2 + x3")]),
    ("6,3,2", &[(0, "3*x1"), (2, "x1 + x2"), (3, "x3")]),
];

fn coset_table() -> Outcome {
    for (p, rows) in COSET_GENERATORS {
        let w = WeightSeq::parse(p).unwrap();
        let listed: Vec<_> = rows.iter().map(|(_, e)| elem(&w, e)).collect();
        for ((j, e), x) in rows.iter().zip(&listed) {
            ensure(coset(&w, *j) == *x, || format!("{p}: 3x1 + {j}w != {e}"))?;
        }
        let got = positive_coset_elements(&w).unwrap();
        ensure(got == listed, || format!("{p}: computed {got:?}"))?;
        passing("table-1", &[("p", p)])?;
    }
    Ok("four types".into())
}

fn monoid_generation() -> Outcome {
    let mut count = 0;
    for (p, rows) in COSET_GENERATORS {
        let w = WeightSeq::parse(p).unwrap();
        let gens: Vec<_> = rows.iter().map(|(_, e)| elem(&w, e)).collect();
        for a in 0..w.lcm() {
            for n in 0.. {
                let x = psi_inverse(&w, Deg { n, a });
                if x.phi() > 30 {
                    break;
                }
                if x.phi() < 0 {
                    continue;
                }
                let witness = monoid_witness(&x).unwrap().ok_or_else(|| format!("{p}: no witness for {x}"))?;
                let sum = gens
                    .iter()
                    .zip(&witness)
                    .fold(w.zero(), |acc, (g, &c)| &acc + &g.smul(c as i64));
                ensure(sum == x, || format!("{p}: witness {witness:?} sums to {sum}, not {x}"))?;
                count += 1;
            }
        }
        passing("lemma-7-2", &[("p", p), ("n_max", "30")])?;
    }
    Ok(format!("{count} witnesses"))
}

fn curve_isomorphism() -> Outcome {
    for (p, t) in TUBULAR.iter().zip(TYPES) {
        let w = WeightSeq::parse(p).unwrap();
        let ty = curve(t);
        for n in 1..=30i64 {
            let s_side: i64 = (0..w.lcm())
                .map(|j| ci_dim(&(&elem(&w, "3*x1").smul(n) + &w.dualizing().smul(j))))
                .sum();
            let r_side = ty.basis(n as u32).len() as i64;
            ensure(s_side == 3 * n && r_side == 3 * n, || {
                format!("{t}, n = {n}: S side {s_side}, R side {r_side}")
            })?;
        }
        let r = passing("theorem-7-3", &[("type", t), ("n_max", "15")])?;
        let ranks: Vec<i64> = (1..=15).map(|n| 3 * n).collect();
        ensure(r.details["c.ranks"] == serde_json::json!(ranks), || {
            format!("{t}: ranks {}", r.details["c.ranks"])
        })?;
    }
    Ok("dims n <= 30, ranks n <= 15".into())
}

const THETA_GENERATORS: [(&str, [&[i64]; 3], [i64; 3]); 4] = [
    ("2222", [&[1, 2, 0, 0], &[0, 1, 1, 1], &[3, 0, 0, 0]], [0, 1, 0]),
    ("333", [&[1, 1, 1], &[0, 3, 0], &[3, 0, 0]], [2, 0, 0]),
    ("442", [&[1, 2, 0], &[0, 1, 1], &[3, 0, 0]], [2, 3, 0]),
    ("632", [&[1, 1, 0], &[0, 0, 1], &[3, 0, 0]], [2, 3, 0]),
];

fn generator_degrees() -> Outcome {
    for (t, monomials, extra) in THETA_GENERATORS {
        let ty = curve(t);
        let th = theta(&ty).unwrap();
        let w = ty.weights().clone();
        for k in 0..3 {
            let exps: Vec<u32> = monomials[k].iter().map(|&e| e as u32).collect();
            let want = th.presentation().from_exponents(&exps).unwrap();
            ensure(th.image(k) == want, || format!("{t}: generator {k} is {}", th.image(k)))?;
            let deg = monomial_degree(&w, monomials[k]);
            ensure(th.image(k).degree().unwrap() == deg, || format!("{t}: degree of generator {k}"))?;
            ensure(h_coordinates(&deg, 4) == Some((1, extra[k])), || {
                format!("{t}: generator {k} at {:?}", h_coordinates(&deg, 4))
            })?;
            ensure(psi(&deg).unwrap() == Deg { n: 1, a: extra[k] }, || format!("{t}: psi of generator {k}"))?;
        }
        passing("table-2-degrees", &[("type", t)])?;
    }
    let w = WeightSeq::parse("6,3,2").unwrap();
    ensure(monomial_degree(&w, &[1, 1, 0]) == coset(&w, 2), || "deg(x1 x2) != 3x1 + 2w".into())?;
    Ok("four types".into())
}

fn cyclic_actions() -> Outcome {
    let exponents = [("2222", [0, 1, 0]), ("333", [2, 0, 0]), ("442", [2, 3, 0]), ("632", [2, 3, 0])];
    for (t, e) in exponents {
        let tag = CurveTag::parse(t).unwrap();
        let field = Field::cyclotomic(tag.p() as u8).unwrap();
        let lambda = (tag == CurveTag::T2222).then(|| field.parse_scalar("5/3").unwrap());
        let ty = CurveType::new(tag, lambda, field).unwrap();
        let zeta = field.primitive_root(tag.p() as u64).unwrap();
        let g = cyclic_action(&ty).unwrap();
        for k in 0..3 {
            ensure(g.multipliers()[k] == zeta.pow(e[k]), || format!("{t}: multiplier {k}"))?;
        }
        ensure(g.order(2 * tag.p() as u64) == Some(tag.p() as u64), || format!("{t}: order"))?;
        passing("table-3", &[("type", t), ("n_max", "4")])?;
    }
    Ok("orders 2, 3, 4, 6".into())
}

fn group_ring() -> Outcome {
    let r = passing("group-ring", &[("p", "6,3,2"), ("trials", "200"), ("seed", "42")])?;
    ensure(r.stats.checked >= 200, || format!("only {} instances", r.stats.checked))?;
    Ok(format!("{} instances", r.stats.checked))
}

fn delta_round_trip() -> Outcome {
    let mut checked = 0;
    for t in ["2222", "333"] {
        checked += passing("delta-roundtrip", &[("type", t), ("band", "3"), ("seed", "42")])?.stats.checked;
    }
    Ok(format!("{checked} instances"))
}

fn monad_and_triangles() -> Outcome {
    let mut checked = 0;
    for t in TYPES {
        for name in ["monad-laws", "triangles"] {
            checked += passing(name, &[("type", t), ("band", "4")])?.stats.checked;
        }
    }
    Ok(format!("{checked} instances"))
}

fn monad_module_conversion() -> Outcome {
    for t in TYPES {
        let ty = curve(t);
        let rbar = CurveAlgebra::new(&ty, true);
        let window = Window::band(rbar.grading(), 0, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for mult in 1..=2 {
            let x = random_equivariant(&rbar, Deg { n: 0, a: 0 }, mult, &window, &mut rng).unwrap();
            let m = x.to_monad_module().unwrap();
            ensure(m.check().passed, || format!("{t}: monad module axioms"))?;
            ensure(m.to_equivariant().unwrap() == x, || format!("{t}: round trip"))?;
        }
        ensure(cocycle_violation_rejected(&ty, 3, 42).unwrap(), || format!("{t}: broken cocycle accepted"))?;
    }
    Ok("four types, broken cocycles rejected".into())
}

fn correspondence() -> Outcome {
    for t in TYPES {
        passing("correspondence", &[("type", t), ("seed", "42")])?;
    }
    Ok("Q(zeta_p) and F_q".into())
}

fn effectiveness() -> Outcome {
    for p in TUBULAR {
        let r = run_check("effective", &Params::new().with("p", p).with("gens", "c")).unwrap();
        ensure(!r.passed() && r.counterexample.is_some(), || format!("{p}: Zc accepted"))?;
        passing("effective", &[("p", p), ("gens", "3*x1; w")])?;
        passing("effective", &[("p", p)])?;
    }
    Ok("Zc rejected, H(p) accepted".into())
}

fn supports() -> Outcome {
    let mut checked = 0;
    for p in TUBULAR.iter().chain(&["2,3,7"]) {
        checked += passing("gsupp", &[("p", p), ("band", "4")])?.stats.checked;
    }
    Ok(format!("{checked} instances"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 14] = [
        ("dim S_x = mult(x)", dimension_formula),
        ("coset multiplicities sum to n", coset_sums),
        ("positive coset elements", coset_table),
        ("H(p)_+ is generated by the coset elements", monoid_generation),
        ("R is isomorphic to pi_*(S_H)", curve_isomorphism),
        ("generator degrees and extra degrees", generator_degrees),
        ("cyclic actions on R", cyclic_actions),
        ("graded group ring", group_ring),
        ("equivariant objects vs group ring modules", delta_round_trip),
        ("monad laws and triangle identities", monad_and_triangles),
        ("equivariant objects vs monad modules", monad_module_conversion),
        ("gradations vs character actions", correspondence),
        ("effective subgroups", effectiveness),
        ("grading supports", supports),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(note) => println!("criterion {:>2} pass  {name} ({note}; {secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
