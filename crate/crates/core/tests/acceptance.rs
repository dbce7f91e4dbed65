//! One PASS/FAIL line per acceptance criterion. All comparisons are exact (tolerance 0).

use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::One;
use zerohecke::charmap::bigraded_closed_form;
use zerohecke::coinvariant::coinvariant_module;
use zerohecke::combinat::{compositions_of, Composition};
use zerohecke::qtarith::{
    ribbon_number_q, ribbon_number_q_determinant, ribbon_number_q_enumeration, ribbon_number_q_inclusion_exclusion,
    QtContext,
};
use zerohecke::verify::{specialization_checks, factor_counts_random, run_suite, Suite, SuiteReport};
use zerohecke::{Limits, Result};

const SEED: u64 = 2024;

struct Outcome {
    checks: usize,
    failures: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            checks: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn suite(&mut self, r: Result<SuiteReport>) {
        match r {
            Ok(r) => {
                self.checks += r.checks;
                for f in r.failures {
                    self.failures.push(format!("{} n={}: {f}", r.suite.name(), r.n));
                }
            }
            Err(e) => self.error(e),
        }
    }

    fn error(&mut self, e: zerohecke::Error) {
        self.checks += 1;
        self.failures.push(e.to_string());
    }
}

fn suites(suite: Suite, ns: impl IntoIterator<Item = usize>) -> Outcome {
    let limits = Limits::default();
    let mut o = Outcome::new();
    for n in ns {
        o.suite(run_suite(suite, n, 2, SEED, &limits));
    }
    o
}

fn demazure() -> Outcome {
    suites(Suite::DemazureRelations, 2..=5)
}

fn norton() -> Outcome {
    suites(Suite::Norton, 1..=5)
}

fn coinvariant() -> Outcome {
    suites(Suite::CoinvariantRegular, 1..=5)
}

fn bigraded() -> Outcome {
    let limits = Limits::default();
    let mut o = Outcome::new();
    for n in 1..=5 {
        let run = |o: &mut Outcome| -> Result<()> {
            let ch = coinvariant_module(n)?.bigraded_characteristic()?;
            let closed = bigraded_closed_form(n, &limits)?;
            o.check(ch == closed, || format!("n={n}: Ch_qt differs from the closed form"));
            let extra = specialization_checks(n, &ch, &limits)?;
            o.checks += 3;
            o.failures.extend(extra.into_iter().map(|v| format!("n={n}: {v}")));
            Ok(())
        };
        if let Err(e) = run(&mut o) {
            o.error(e);
        }
    }
    o
}

fn ribbon_numbers() -> Outcome {
    let limits = Limits::default();
    let mut o = Outcome::new();
    for n in 1..=7 {
        let run = |o: &mut Outcome| -> Result<()> {
            for a in compositions_of(n, &limits)? {
                let det = ribbon_number_q_determinant(&a)?;
                let ie = ribbon_number_q_inclusion_exclusion(&a)?;
                let en = ribbon_number_q_enumeration(&a, &limits)?;
                o.check(det == ie && ie == en, || format!("r_{a}(q): {det} / {ie} / {en}"));
            }
            Ok(())
        };
        if let Err(e) = run(&mut o) {
            o.error(e);
        }
        o.suite(run_suite(Suite::Foata, n, 2, SEED, &limits));
    }
    let a = Composition::new(vec![1, 2, 1]).unwrap();
    match ribbon_number_q(&a, &limits) {
        Ok(r) => o.check(r.eval(&BigInt::one(), &BigInt::one()) == BigInt::from(5), || {
            format!("r_(1,2,1) = {r}")
        }),
        Err(e) => o.error(e),
    }
    o
}

fn qt_layer() -> Outcome {
    let limits = Limits::default();
    let mut o = Outcome::new();
    for q in [2u64, 3] {
        let ctx = QtContext::new(q).unwrap();
        for n in 1..=4 {
            let run = |o: &mut Outcome| -> Result<()> {
                for a in compositions_of(n, &limits)? {
                    let m = ctx.qt_multinomial(n, &a)?;
                    o.check(m.t_exponents_divisible_by(q - 1), || format!("q={q} (n;{a})_qt = {m}"));
                    let det = ctx.ribbon_number_qt_determinant(&a)?;
                    let ie = ctx.ribbon_number_qt_inclusion_exclusion(&a)?;
                    o.check(det == ie, || format!("q={q} r_{a}(q,t): {det} vs {ie}"));
                    let at_one = det.eval(&BigInt::one(), &BigInt::one());
                    let expected = ribbon_number_q(&a, &limits)?.eval(&BigInt::from(q), &BigInt::one());
                    o.check(at_one == expected, || {
                        format!("q={q} r_{a}(q,1) = {at_one}, expected {expected}")
                    });
                    o.check(det.t_exponents_divisible_by(q - 1), || format!("q={q} r_{a}(q,t) = {det}"));
                }
                Ok(())
            };
            if let Err(e) = run(&mut o) {
                o.error(e);
            }
        }
    }
    o
}

fn flags() -> Outcome {
    let limits = Limits::default();
    let mut o = Outcome::new();
    for (n, q) in [(2, 2), (2, 3), (3, 2), (3, 3), (4, 2)] {
        o.suite(run_suite(Suite::FlagMultiplicity, n, q, SEED, &limits));
    }
    o
}

fn chains() -> Outcome {
    let limits = Limits::default();
    let mut o = Outcome::new();
    for q in [2, 3] {
        for n in 1..=3 {
            o.suite(run_suite(Suite::ChainComplex, n, q, SEED, &limits));
        }
    }
    o
}

fn springer() -> Outcome {
    suites(Suite::HookSpringer, 1..=5)
}

fn factor_counts() -> Outcome {
    let mut o = Outcome::new();
    match factor_counts_random(3, 50, SEED) {
        Ok((count, failures)) => {
            o.checks += count;
            o.failures.extend(failures.into_iter().map(|v| v.to_string()));
        }
        Err(e) => o.error(e),
    }
    o
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("demazure relations, n<=5, 200 random polynomials of degree <=6 per n", demazure),
        ("norton summands of the regular module, n<=5", norton),
        ("coinvariant blocks are projective and the quotient is regular, n<=5", coinvariant),
        ("bigraded characteristic of the coinvariants, n<=5", bigraded),
        ("ribbon numbers by three routes and inverse major index, n<=7; r_(1,2,1)=5", ribbon_numbers),
        ("(q,t) ribbon numbers, n<=4, q in {2,3}", qt_layer),
        ("flag modules for (n,q) in {(2,2),(2,3),(3,2),(3,3),(4,2)}", flags),
        ("Tits chain complexes, n<=3, q in {2,3}", chains),
        ("Springer hooks and non-hook witnesses, n<=5", springer),
        ("kernel-intersection vs composition series, 50 modules at n=3", factor_counts),
    ];
    let mut all = true;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let ok = o.failures.is_empty() && o.checks > 0;
        all &= ok;
        println!(
            "{} {:>2} {name}: {} checks, {} failures, tolerance exact ({:.1?})",
            if ok { "PASS" } else { "FAIL" },
            k + 1,
            o.checks,
            o.failures.len(),
            start.elapsed()
        );
        for f in o.failures.iter().take(5) {
            println!("       {f}");
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
