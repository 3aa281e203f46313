//! The acceptance suite, shared by the `acceptance` test target and the
//! `selftest` subcommand. Every check is deterministic: random inputs come from
//! ChaCha8 with the seeds below.

use std::fmt;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::braid::{
    canonical_form, delta, perm::all_permutations, permutation_braid_of, BraidWord,
};
use crate::checker::{check_a, reference_signature, CheckError};
use crate::closure::{
    describe_closure, diagram_stats, invariant_signature, lift, rp3_doubled_linking_matrix,
    s3_doubled_linking_matrix,
};
use crate::lines::{
    random_hopf_config, standardize, verify_script, IsotopyScript, LineError, Motion, ProjLine,
    Stage, StageKind,
};
use crate::mw::{
    compositions, max_crossings, model_braid, positive_linking_check, verify_model, ModelParams,
};
use crate::tangent::{section_grid, symmetry_residual, Pencil};
use crate::torus::{arc_count, component_count, crossing_number, torus_braid, TorusParams};
use crate::Rational;

pub const LIFT_SEED: u64 = 0x5eed_0004;
pub const LINES_SEED: u64 = 0x5eed_0005;
pub const MIRROR_SEED: u64 = 0x5eed_0007;

#[derive(Debug, Clone, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u128,
    pub limit_ms: Option<u128>,
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        let limit = self
            .limit_ms
            .map(|l| format!(" < {l} ms"))
            .unwrap_or_default();
        write!(
            f,
            "criterion {} [{verdict}] {} ({} ms{limit}): {}",
            self.id, self.name, self.elapsed_ms, self.detail
        )
    }
}

/// Runs `body`, which returns a summary or the first failure, under a time limit.
fn timed(
    id: u8,
    name: &'static str,
    limit: Option<Duration>,
    body: impl FnOnce() -> Result<String, String>,
) -> CriterionReport {
    let start = Instant::now();
    let outcome = body();
    let elapsed = start.elapsed();
    let in_time = limit.is_none_or(|l| elapsed < l);
    let (passed, mut detail) = match outcome {
        Ok(s) => (in_time, s),
        Err(e) => (false, e),
    };
    if !in_time {
        detail.push_str("; runtime limit exceeded");
    }
    CriterionReport {
        id,
        name,
        passed,
        detail,
        elapsed_ms: elapsed.as_millis(),
        limit_ms: limit.map(|l| l.as_millis()),
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn torus_pairs() -> impl Iterator<Item = (usize, usize)> {
    (1..=12usize).flat_map(|p| {
        (1..=p)
            .filter(move |q| (p - q) % 2 == 0)
            .map(move |q| (p, q))
    })
}

pub fn criterion1() -> CriterionReport {
    timed(
        1,
        "torus link formulas",
        Some(Duration::from_secs(1)),
        || {
            let mut checked = 0;
            for (p, q) in torus_pairs() {
                let params = TorusParams::new(p as i64, q as i64).map_err(|e| e.to_string())?;
                let w = torus_braid(q, p as i64).map_err(|e| e.to_string())?;
                let stats = diagram_stats(&w);
                let cr = crossing_number(params).map_err(|e| e.to_string())?;
                ensure(
                    stats.crossings as i64 == cr && cr == (p * (q - 1) / 2) as i64,
                    || format!("({p},{q}): {} crossings, formula {cr}", stats.crossings),
                )?;
                ensure(
                    stats.arcs as i64 == arc_count(params) && stats.arcs == q,
                    || format!("({p},{q}): {} arcs", stats.arcs),
                )?;
                let gcd = component_count(params);
                ensure(describe_closure(&w).component_count() as i64 == gcd, || {
                    format!("({p},{q}): cycle count differs from gcd {gcd}")
                })?;
                let wide = torus_braid(p, q as i64).map_err(|e| e.to_string())?;
                ensure(
                    describe_closure(&wide).component_count() as i64 == gcd,
                    || format!("({p},{q}): swapped braid has the wrong component count"),
                )?;
                checked += 1;
            }
            Ok(format!("{checked} parameter pairs"))
        },
    )
}

fn certify_degree(d: usize) -> Result<(usize, usize), String> {
    let reference = reference_signature(d);
    let (mut certified, mut rejected) = (0, 0);
    for perm in all_permutations(d) {
        let x = permutation_braid_of(&perm);
        let qualifies = x.len() == max_crossings(d) && describe_closure(&x).is_knot();
        match check_a(&x, d) {
            Ok(cert) if qualifies => {
                ensure(cert.verified && cert.recheck().unwrap_or(false), || {
                    format!("d={d}: certificate for {x} does not verify")
                })?;
                ensure(invariant_signature(&x) == reference, || {
                    format!("d={d}: signature of {x} differs")
                })?;
                certified += 1;
            }
            Ok(_) => {
                return Err(format!(
                    "d={d}: {x} certified without meeting the hypotheses"
                ))
            }
            Err(CheckError::HypothesisFailed { .. }) if !qualifies => {
                if x.len() == max_crossings(d) {
                    ensure(invariant_signature(&x) != reference, || {
                        format!("d={d}: rejected {x} has the reference signature")
                    })?;
                }
                rejected += 1;
            }
            Err(e) => return Err(format!("d={d}: {x}: {e}")),
        }
    }
    ensure(certified > 0, || format!("d={d}: nothing to certify"))?;
    Ok((certified, rejected))
}

pub fn criterion2() -> CriterionReport {
    timed(
        2,
        "exhaustive certification of permutation braids",
        None,
        || {
            let mut parts = Vec::new();
            for d in 3..=6 {
                let (c, r) = certify_degree(d)?;
                parts.push(format!("d={d}: {c} certified, {r} rejected"));
            }
            let start = Instant::now();
            let (c, r) = certify_degree(7)?;
            let t = start.elapsed();
            ensure(t < Duration::from_secs(30), || {
                format!("d=7 took {} ms", t.as_millis())
            })?;
            parts.push(format!(
                "d=7: {c} certified, {r} rejected in {} ms",
                t.as_millis()
            ));
            Ok(parts.join("; "))
        },
    )
}

pub fn criterion3() -> CriterionReport {
    timed(3, "model link suite", Some(Duration::from_secs(10)), || {
        let mut count = 0;
        for total in 1..=8 {
            for parts in compositions(total) {
                let wp = ModelParams::new(parts.clone()).map_err(|e| e.to_string())?;
                let model = verify_model(&wp).map_err(|e| format!("{parts:?}: {e}"))?;
                let g = wp.genus_index();
                ensure(model.actual.components == g + 1, || {
                    format!("{parts:?}: component count")
                })?;
                ensure(
                    model.braid.len() == max_crossings(wp.degree()) - g - 1,
                    || format!("{parts:?}: crossing total"),
                )?;
                ensure(model.expected.identity_check, || {
                    format!("{parts:?}: arithmetic identity")
                })?;
                if g >= 1 {
                    ensure(
                        positive_linking_check(&wp).map_err(|e| e.to_string())?,
                        || format!("{parts:?}: positivity"),
                    )?;
                }
                count += 1;
            }
        }
        let w11 = verify_model(&ModelParams::new(vec![1, 1]).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        ensure(w11.expected.w_lambda_abs == 2, || {
            "W_1(1,1) writhe bound".into()
        })?;
        Ok(format!("{count} compositions verified"))
    })
}

/// A random word on `strands` strands with up to `max_len` letters of either sign.
pub fn random_word<R: Rng>(rng: &mut R, strands: usize, max_len: usize) -> BraidWord {
    let len = if strands < 2 {
        0
    } else {
        rng.gen_range(0..=max_len)
    };
    let letters = (0..len)
        .map(|_| {
            let g = rng.gen_range(1..strands as i32);
            if rng.gen_bool(0.5) {
                g
            } else {
                -g
            }
        })
        .collect();
    BraidWord::new(strands, letters).expect("letters are in range")
}

fn lift_coherent(w: &BraidWord) -> bool {
    let closure = w
        .concat(&delta(w.strands()).expect("positive strand count"))
        .permutation();
    let lifted = lift(w);
    lifted.permutation() == closure.then(&closure) && lifted.exponent_sum() == 2 * w.exponent_sum()
}

pub fn criterion4() -> CriterionReport {
    timed(4, "lift coherence", Some(Duration::from_secs(5)), || {
        let mut exhaustive = 0;
        for n in 1..=5 {
            for perm in all_permutations(n) {
                let x = permutation_braid_of(&perm);
                ensure(lift_coherent(&x), || format!("permutation braid {x}"))?;
                exhaustive += 1;
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(LIFT_SEED);
        for _ in 0..1000 {
            let n = rng.gen_range(1..=8);
            let w = random_word(&mut rng, n, 40);
            ensure(lift_coherent(&w), || format!("random word {w}"))?;
        }
        for (p, q) in torus_pairs() {
            let w = torus_braid(q, p as i64).map_err(|e| e.to_string())?;
            let lifted = diagram_stats(&lift(&w));
            ensure(lifted.crossings == p * (q - 1), || {
                format!("lift of torus_braid({q},{p})")
            })?;
        }
        Ok(format!(
            "{exhaustive} permutation braids, 1000 random words (seed {LIFT_SEED:#x})"
        ))
    })
}

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Scripts that push one line through another, or touch it at the end.
pub fn collision_fixtures() -> Vec<IsotopyScript<Rational>> {
    let input: Vec<ProjLine<Rational>> = vec![
        ProjLine::Affine {
            point: [q(0), q(0), q(0)],
            direction: [q(1), q(0), q(0)],
        },
        ProjLine::Affine {
            point: [q(0), q(-1), q(1)],
            direction: [q(0), q(1), q(0)],
        },
    ];
    let fixed = Motion::stationary(&input[0].homogeneous());
    let v = |x: [i64; 4]| x.map(q);
    let drops = [-2, -1, -5];
    let mut scripts: Vec<IsotopyScript<Rational>> = drops
        .iter()
        .map(|&dz| IsotopyScript {
            input: input.clone(),
            chart: identity4(),
            slopes: vec![None, None],
            stages: vec![Stage {
                kind: StageKind::Translate { line: 1 },
                motions: vec![
                    fixed.clone(),
                    Motion {
                        p0: v([0, -1, 1, 1]),
                        p1: v([0, 0, dz, 0]),
                        d0: v([0, 1, 0, 0]),
                        d1: v([0; 4]),
                    },
                ],
            }],
        })
        .collect();
    // a certified script extended by lowering the top line through the one below
    let config: Vec<ProjLine<Rational>> =
        crate::lines::standard_hyperboloid_config(2, false).expect("two lines");
    let mut script = standardize(&config).expect("standard input");
    let finals = script.final_configuration();
    let mut motions: Vec<Motion<Rational>> = finals.iter().map(Motion::stationary).collect();
    let top = &finals[1];
    motions[1].p1 = [q(0), q(0), -top.p[3].clone() * q(3), q(0)];
    script.stages.push(Stage {
        kind: StageKind::Translate { line: 1 },
        motions,
    });
    scripts.push(script);
    scripts
}

fn identity4() -> crate::lines::Mat4<Rational> {
    std::array::from_fn(|r| std::array::from_fn(|c| if r == c { q(1) } else { q(0) }))
}

pub fn criterion5() -> CriterionReport {
    timed(
        5,
        "line configuration engine",
        Some(Duration::from_secs(60)),
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(LINES_SEED);
            let mut stages = 0;
            for trial in 0..200 {
                let n = rng.gen_range(2..=6);
                let with_infinity = rng.gen_bool(0.5);
                let config: Vec<ProjLine<Rational>> =
                    random_hopf_config(&mut rng, n, with_infinity);
                let script = standardize(&config).map_err(|e| format!("trial {trial}: {e}"))?;
                let cert = verify_script(&script).map_err(|e| format!("trial {trial}: {e}"))?;
                ensure(cert.total_roots() == 0, || {
                    format!("trial {trial}: nonzero root count")
                })?;
                ensure(cert.entries.iter().all(|e| e.dlk == 1), || {
                    format!("trial {trial}: negative pair")
                })?;
                ensure(script.satisfies_final_equations(), || {
                    format!("trial {trial}: final equations")
                })?;
                stages += script.stages.len();
            }
            let fixtures = collision_fixtures();
            for (k, script) in fixtures.iter().enumerate() {
                match verify_script(script) {
                    Err(LineError::CollisionFound { .. }) => {}
                    other => return Err(format!("fixture {k} was not rejected: {other:?}")),
                }
            }
            let reversed = vec![
                ProjLine::standard(q(1)),
                ProjLine::standard(q(2)).reversed(),
            ];
            ensure(
                matches!(standardize(&reversed), Err(LineError::NotHopf(0, 1))),
                || "negative pair accepted".into(),
            )?;
            Ok(format!(
            "200 configurations ({stages} stages, seed {LINES_SEED:#x}); {} collision fixtures rejected",
            fixtures.len()
        ))
        },
    )
}

pub fn criterion6() -> CriterionReport {
    timed(
        6,
        "tangent surface sections",
        Some(Duration::from_secs(10)),
        || {
            let mut worst: f64 = 0.0;
            for d in 4..=7 {
                for pencil in [Pencil::ThroughZLine, Pencil::ThroughWLine] {
                    let want = pencil.symmetry_order(d);
                    for c in section_grid::<f64>(d, pencil, 8, 2048).map_err(|e| e.to_string())? {
                        ensure(c.cusps.len() == want, || {
                            format!(
                                "d={d} {pencil:?} phi={}: {} cusps, expected {want}",
                                c.phi,
                                c.cusps.len()
                            )
                        })?;
                        let r = symmetry_residual(&c, want).map_err(|e| e.to_string())?;
                        ensure(r < 1e-6, || {
                            format!("d={d} {pencil:?} phi={}: residual {r:e}", c.phi)
                        })?;
                        worst = worst.max(r);
                    }
                }
            }
            Ok(format!("64 sections, worst symmetry residual {worst:.2e}"))
        },
    )
}

pub fn criterion7() -> CriterionReport {
    timed(7, "negative and identity controls", None, || {
        for d in 3..=7 {
            let err = check_a(&delta(d).expect("d > 0"), d);
            ensure(
                matches!(err, Err(CheckError::HypothesisFailed { .. })),
                || format!("half twist accepted at d={d}"),
            )?;
        }
        let ab = BraidWord::new(3, vec![1, 2]).expect("valid");
        let ba = BraidWord::new(3, vec![2, 1]).expect("valid");
        let (fa, fb) = (
            canonical_form(&ab).map_err(|e| e.to_string())?,
            canonical_form(&ba).map_err(|e| e.to_string())?,
        );
        ensure(fa != fb, || "s1 s2 and s2 s1 share a normal form".into())?;
        let mut words: Vec<BraidWord> = vec![
            torus_braid(5, 7).map_err(|e| e.to_string())?,
            model_braid(&ModelParams::new(vec![1, 2, 3]).map_err(|e| e.to_string())?),
            delta(4).expect("positive"),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(MIRROR_SEED);
        for _ in 0..50 {
            let n = rng.gen_range(2..=7);
            words.push(random_word(&mut rng, n, 25));
        }
        for w in &words {
            let (m, mm) = (
                rp3_doubled_linking_matrix(w),
                rp3_doubled_linking_matrix(&w.mirror()),
            );
            let (l, lm) = (
                s3_doubled_linking_matrix(&lift(w)),
                s3_doubled_linking_matrix(&lift(&w.mirror())),
            );
            let negated = |a: &[Vec<i64>], b: &[Vec<i64>]| {
                a.len() == b.len()
                    && a.iter()
                        .zip(b)
                        .all(|(r, s)| r.iter().zip(s).all(|(x, y)| *x == -*y))
            };
            ensure(
                negated(m.rows(), mm.rows()) && negated(l.rows(), lm.rows()),
                || format!("mirror of {w}"),
            )?;
        }
        Ok(format!(
            "half twists rejected for d=3..7; normal forms differ; {} mirrors negate",
            words.len()
        ))
    })
}

pub fn run_all() -> Vec<CriterionReport> {
    vec![
        criterion1(),
        criterion2(),
        criterion3(),
        criterion4(),
        criterion5(),
        criterion6(),
        criterion7(),
    ]
}
