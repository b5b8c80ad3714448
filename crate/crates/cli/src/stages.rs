//! The checks behind each command, in report order.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, OnceLock};
use std::time::Instant;

use fivesq::appcurve::{
    check_map_mod_p, gjx_scan, map_to_c, pullback, pullback_all, verify_quotient_identity, Pullback, SPoint,
};
use fivesq::arith::{rat, Field, Fp, NfCtx, NumberFieldElement, Rational, SquareVerdict};
use fivesq::curve::{
    has_good_reduction, l_polynomial, octic_curve, point_counts, quartic_factors, CurveModel, Point, Sign,
};
use fivesq::divisor::{divisor_of_function, CurveFunction, Place};
use fivesq::jacobian::{
    enumerate_jacobian, generator_divisors, octic_two_rank_over_q, reduction_map, span, two_rank,
    two_torsion_classify, DivisorClass, GroupStructure, TwoTorsionWitness,
};
use fivesq::par::Exec;
use fivesq::poly::{factor_ff, factor_q, parse_poly, Poly};
use fivesq::search::{
    histogram, irreducible_places, rational_point_search, rational_points, sweep, SweepRow,
};
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde_json::{json, Value};

use crate::report::{Check, Stage, Status};
use crate::{Command, Config, PointSpec};

type Cached<T> = OnceLock<Result<T, String>>;

/// Shared intermediate results, each computed at most once per run.
pub struct Context {
    pub config: Config,
    pub exec: Exec,
    pub curve: CurveModel<Rational>,
    generators: Cached<Vec<DivisorClass<Rational>>>,
    torsion: Cached<GroupStructure<Rational>>,
    c5: Cached<CurveModel<Fp>>,
    j5: Cached<GroupStructure<Fp>>,
    images: Cached<Vec<DivisorClass<Fp>>>,
    sweeps: [Cached<Vec<SweepRow>>; 3],
    galois_two_rank: OnceLock<u32>,
}

fn get<T>(cell: &Cached<T>, f: impl FnOnce() -> Result<T, String>) -> Result<&T, String> {
    cell.get_or_init(f).as_ref().map_err(Clone::clone)
}

impl Context {
    pub fn new(config: Config, exec: Exec) -> Self {
        Context {
            config,
            exec,
            curve: octic_curve(),
            generators: OnceLock::new(),
            torsion: OnceLock::new(),
            c5: OnceLock::new(),
            j5: OnceLock::new(),
            images: OnceLock::new(),
            sweeps: [OnceLock::new(), OnceLock::new(), OnceLock::new()],
            galois_two_rank: OnceLock::new(),
        }
    }

    pub fn generators(&self) -> Result<&[DivisorClass<Rational>], String> {
        get(&self.generators, || {
            generator_divisors::<Rational>(&())
                .iter()
                .map(|d| DivisorClass::of(d, &self.curve).map_err(|e| e.to_string()))
                .collect()
        })
        .map(Vec::as_slice)
    }

    /// The subgroup `I` spanned by `[Q1], [Q2], [Q3]`.
    pub fn torsion(&self) -> Result<&GroupStructure<Rational>, String> {
        get(&self.torsion, || {
            span(
                self.generators()?,
                &self.curve,
                self.config.span_budget,
                self.exec,
            )
            .map_err(|e| e.to_string())
        })
    }

    pub fn c5(&self) -> Result<&CurveModel<Fp>, String> {
        get(&self.c5, || self.curve.reduce_mod(5).map_err(|e| e.to_string()))
    }

    /// All of `J(F_5)`, enumerated up to the order given by `L(1)`.
    pub fn j5(&self) -> Result<&GroupStructure<Fp>, String> {
        get(&self.j5, || {
            let c5 = self.c5()?;
            let order = jacobian_order(c5, self.exec)?.0;
            let order = order.to_u64().ok_or("order does not fit in u64")?;
            enumerate_jacobian(c5, order, self.exec).map_err(|e| e.to_string())
        })
    }

    /// `pi(D_i)` for the elements of `I`, in the order of `torsion().elements`.
    pub fn images(&self) -> Result<&[DivisorClass<Fp>], String> {
        get(&self.images, || {
            let (t, c5) = (self.torsion()?, self.c5()?);
            self.exec
                .map(&t.elements, |(_, a)| reduction_map(a, &self.curve, c5))
                .into_iter()
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| e.to_string())
        })
        .map(Vec::as_slice)
    }

    /// Rank of `J(Q)[2]` from the Galois action on the roots of `f`.
    pub fn galois_two_rank(&self) -> u32 {
        *self.galois_two_rank.get_or_init(octic_two_rank_over_q)
    }

    pub fn sweep(&self, k: i64) -> Result<&[SweepRow], String> {
        let cell = &self.sweeps[(k - 1) as usize];
        get(cell, || Ok(sweep(self.torsion()?, &self.curve, k, self.exec))).map(Vec::as_slice)
    }
}

/// Checks for `cmd`, in report order.
pub fn run(cmd: &Command, ctx: &Context) -> Vec<Check> {
    match cmd {
        Command::VerifyAll => {
            let mut out = vec![
                curve_model(ctx),
                good_reduction(ctx),
                jacobian_order_check(ctx, 5),
                jacobian_order_check(ctx, 7),
            ];
            out.extend(torsion_stage(ctx));
            out.extend(two_torsion_stage(ctx));
            out.push(sweep_check(ctx, 1));
            out.push(rational_points_check(ctx));
            out.push(sweep_check(ctx, 2));
            out.push(quadratic_pencil(ctx));
            out.push(quadratic_irreducible(ctx));
            out.push(sweep_check(ctx, 3));
            out.push(cubic_points(ctx));
            out.push(pullback_cubic(ctx));
            out.push(pullback_theta());
            out.push(pullback_quadratic());
            out.push(quotient_identity());
            out.push(quotient_map_mod_p(ctx));
            out.push(gjx_check(ctx, ctx.config.gjx_height));
            out
        }
        Command::JacobianTorsion => torsion_stage(ctx),
        Command::JacobianTwoTorsion => two_torsion_stage(ctx),
        Command::JacobianStructure => vec![torsion_span(ctx), jf5_structure(ctx)],
        Command::Count { prime, ext } => vec![count(ctx, *prime, *ext)],
        Command::Sweep { degree } => {
            let mut out = vec![sweep_check(ctx, *degree)];
            if *degree == 2 {
                out.push(quadratic_pencil(ctx));
            }
            out
        }
        Command::Points { degree } => vec![match degree {
            1 => rational_points_check(ctx),
            2 => quadratic_irreducible(ctx),
            _ => cubic_points(ctx),
        }],
        Command::Pullback { point } => vec![match point {
            PointSpec::ThetaExample => pullback_theta(),
            PointSpec::IExample => pullback_quadratic(),
            PointSpec::AllCubic => pullback_cubic(ctx),
            PointSpec::Place { u, v } => pullback_place(u, v),
        }],
        Command::Gjx { height } => vec![gjx_check(ctx, *height)],
        Command::Identity => vec![quotient_identity(), quotient_map_mod_p(ctx)],
    }
}

fn torsion_stage(ctx: &Context) -> Vec<Check> {
    vec![
        generator_orders(ctx),
        torsion_span(ctx),
        jf5_structure(ctx),
        reduction_injective(ctx),
        torsion_bound(ctx),
        rank_zero(ctx),
    ]
}

fn two_torsion_stage(ctx: &Context) -> Vec<Check> {
    vec![
        two_torsion_witnesses(ctx),
        two_rank_galois(ctx),
        two_rank_mod_p(ctx),
    ]
}

type Outcome = Result<(Status, Value), String>;

/// Runs `f` under a timer; an `Err` becomes a FAIL carrying the message.
fn check(stage: Stage, id: &str, anchor: &str, f: impl FnOnce() -> Outcome) -> Check {
    let start = Instant::now();
    let (status, witness) = f().unwrap_or_else(|e| (Status::Fail, json!({ "error": e })));
    Check::new(stage, id, anchor, status, witness).timed(start.elapsed())
}

fn q(c: &[i64]) -> Poly<Rational> {
    Poly::from_i64s(&(), c)
}

fn strings<T: ToString>(xs: impl IntoIterator<Item = T>) -> Vec<String> {
    xs.into_iter().map(|x| x.to_string()).collect()
}

fn hist_json(h: &BTreeMap<usize, usize>) -> Value {
    Value::Object(h.iter().map(|(k, v)| (k.to_string(), json!(v))).collect())
}

fn curve_model(ctx: &Context) -> Check {
    check(Stage::Curve, "curve-model", "y^2 = x^8 + 14x^4 + 1", || {
        let c = &ctx.curve;
        let (qp, qm) = quartic_factors();
        let product = qp.mul(&qm) == *c.f();
        let mirrored = qp == qm.compose(&q(&[0, -1]));
        let ok = c.genus() == 3 && product && mirrored;
        Ok((
            Status::from_bool(ok),
            json!({
                "f": c.f().to_string(),
                "genus": c.genus(),
                "q_minus": qm.to_string(),
                "q_plus": qp.to_string(),
                "f_equals_q_minus_q_plus": product,
                "q_plus_is_q_minus_of_minus_x": mirrored,
            }),
        ))
    })
}

fn good_reduction(ctx: &Context) -> Check {
    check(
        Stage::GoodReduction,
        "good-reduction",
        "5 is a prime of good reduction",
        || {
            let mut ok = true;
            let mut per = Vec::new();
            for &p in &ctx.config.reduction_primes {
                let good = has_good_reduction(&ctx.curve, p).map_err(|e| e.to_string())?;
                ok &= good;
                let degrees = match ctx.curve.reduce_mod(p) {
                    Ok(cp) => json!(factor_ff(cp.f()).degree_multiset()),
                    Err(_) => Value::Null,
                };
                per.push(json!({ "prime": p, "good": good, "factor_degrees_of_f": degrees }));
            }
            Ok((Status::from_bool(ok), json!({ "primes": per })))
        },
    )
}

/// `(L(1), counts, L)` from point counts over `F_p, F_p^2, F_p^3`.
fn jacobian_order(cp: &CurveModel<Fp>, exec: Exec) -> Result<(BigInt, Vec<u64>, Poly<Rational>), String> {
    let counts = point_counts(cp, cp.genus(), exec).map_err(|e| e.to_string())?;
    let l = l_polynomial(cp, &counts).map_err(|e| e.to_string())?;
    let v = l.eval(&rat(1));
    if !v.is_integer() {
        return Err(format!("L(1) = {v} is not an integer"));
    }
    Ok((v.to_integer(), counts, l))
}

fn jacobian_order_check(ctx: &Context, p: u64) -> Check {
    let (id, anchor) = match p {
        5 => ("jf5-order".to_string(), "#J(F5)=512".to_string()),
        _ => (format!("jf{p}-order"), format!("#J(Q)_tors divides #J(F{p})")),
    };
    check(Stage::Count, &id, &anchor, || {
        let cp = ctx.curve.reduce_mod(p).map_err(|e| e.to_string())?;
        let (order, counts, l) = jacobian_order(&cp, ctx.exec)?;
        let ok = if p == 5 {
            order == BigInt::from(512)
        } else {
            (&order % BigInt::from(128)) == BigInt::from(0)
        };
        Ok((
            Status::from_bool(ok),
            json!({
                "prime": p,
                "counts": counts,
                "l_polynomial": l.to_string().replace('x', "T"),
                "order": order.to_string(),
            }),
        ))
    })
}

fn count(ctx: &Context, p: u64, ext: usize) -> Check {
    let jf5 = p == 5 && ext >= 3;
    let anchor = if jf5 {
        "#J(F5)=512".to_string()
    } else {
        format!("#C(F_{p}^k), k <= {ext}")
    };
    check(Stage::Count, &format!("count-p{p}"), &anchor, || {
        let cp = ctx.curve.reduce_mod(p).map_err(|e| e.to_string())?;
        let counts = point_counts(&cp, ext, ctx.exec).map_err(|e| e.to_string())?;
        let rows: Vec<Value> = counts
            .iter()
            .enumerate()
            .map(|(i, n)| json!({ "k": i + 1, "q": p.pow(i as u32 + 1), "points": n }))
            .collect();
        let mut w = json!({ "prime": p, "counts": rows });
        let mut ok = true;
        if ext >= cp.genus() {
            let l = l_polynomial(&cp, &counts[..cp.genus()]).map_err(|e| e.to_string())?;
            let order = l.eval(&rat(1)).to_integer();
            if jf5 {
                ok = order == BigInt::from(512);
            }
            w["l_polynomial"] = json!(l.to_string().replace('x', "T"));
            w["jacobian_order"] = json!(order.to_string());
        }
        Ok((Status::from_bool(ok), w))
    })
}

fn generator_orders(ctx: &Context) -> Check {
    check(Stage::Torsion, "generator-orders", "orders 4, 4, 8", || {
        let gens = ctx.generators()?;
        let orders = gens
            .iter()
            .map(|a| a.order(512, &ctx.curve).map_err(|e| e.to_string()))
            .collect::<Result<Vec<u64>, _>>()?;
        let divisors = strings(generator_divisors::<Rational>(&()).iter());
        Ok((
            Status::from_bool(orders == [4, 4, 8]),
            json!({ "generators": divisors, "orders": orders }),
        ))
    })
}

fn torsion_span(ctx: &Context) -> Check {
    check(
        Stage::Torsion,
        "torsion-span",
        "#J(Q)=128 = Z/4 x Z/4 x Z/8",
        || {
            let t = ctx.torsion()?;
            let ok = t.order() == 128 && t.invariant_factors == [4, 4, 8];
            Ok((
                Status::from_bool(ok),
                json!({
                    "order": t.order(),
                    "invariant_factors": t.invariant_factors,
                    "relations": t.relations,
                }),
            ))
        },
    )
}

fn jf5_structure(ctx: &Context) -> Check {
    check(Stage::Torsion, "jf5-structure", "J(F5) enumerated", || {
        let j = ctx.j5()?;
        let c5 = ctx.c5()?;
        let r = two_rank(j, c5, ctx.exec);
        Ok((
            Status::from_bool(j.order() == 512),
            json!({
                "order": j.order(),
                "invariant_factors": j.invariant_factors,
                "two_rank": r,
            }),
        ))
    })
}

fn reduction_injective(ctx: &Context) -> Check {
    check(Stage::Torsion, "reduction-injective", "is an injection", || {
        let t = ctx.torsion()?;
        let images = ctx.images()?;
        let c5 = ctx.c5()?;
        let distinct: BTreeSet<&DivisorClass<Fp>> = images.iter().collect();
        // pi(e + Q_j) = pi(e) + pi(Q_j) on the coordinate box Z/4 x Z/4 x Z/8
        let index: HashMap<&[i64], usize> = t
            .elements
            .iter()
            .enumerate()
            .map(|(i, (v, _))| (v.as_slice(), i))
            .collect();
        let unit = |j: usize| -> Vec<i64> { (0..3).map(|i| i64::from(i == j)).collect() };
        let gen_images: Vec<&DivisorClass<Fp>> = (0..3)
            .map(|j| {
                index
                    .get(unit(j).as_slice())
                    .map(|&i| &images[i])
                    .ok_or("generator missing from span")
            })
            .collect::<Result<_, _>>()?;
        let mut checks = 0usize;
        let mut failures = 0usize;
        let moduli = &t.invariant_factors;
        for (i, (v, _)) in t.elements.iter().enumerate() {
            for j in 0..3 {
                let mut w = v.clone();
                w[j] = (w[j] + 1).rem_euclid(moduli[j] as i64);
                let k = *index.get(w.as_slice()).ok_or("coordinates outside the span")?;
                checks += 1;
                failures += usize::from(images[k] != images[i].add(gen_images[j], c5));
            }
        }
        let ok = distinct.len() == t.order() && failures == 0;
        Ok((
            Status::from_bool(ok),
            json!({
                "prime": 5,
                "classes": t.order(),
                "distinct_images": distinct.len(),
                "homomorphism_checks": checks,
                "homomorphism_failures": failures,
            }),
        ))
    })
}

fn two_torsion_count(ctx: &Context) -> Result<usize, String> {
    let t = ctx.torsion()?;
    Ok(t.elements
        .iter()
        .filter(|(_, a)| a.add(a, &ctx.curve).is_identity())
        .count())
}

fn torsion_bound(ctx: &Context) -> Check {
    check(Stage::Torsion, "torsion-bound", "J(Q)_tors = I", || {
        let c5 = ctx.c5()?;
        let j = ctx.j5()?;
        let images = ctx.images()?;
        let order = j.order();
        let two_power = order.is_power_of_two();
        let pi_i: BTreeSet<&DivisorClass<Fp>> = images.iter().collect();
        let injective = pi_i.len() == images.len();
        let doubled_j: BTreeSet<DivisorClass<Fp>> = ctx
            .exec
            .map(&j.elements, |(_, a)| a.add(a, c5))
            .into_iter()
            .collect();
        let doubled_pi: BTreeSet<DivisorClass<Fp>> = images.iter().map(|a| a.add(a, c5)).collect();
        let meet: BTreeSet<&DivisorClass<Fp>> =
            pi_i.iter().copied().filter(|a| doubled_j.contains(*a)).collect();
        let mod2_injective = meet.len() == doubled_pi.len() && doubled_pi.iter().all(|a| meet.contains(a));
        let galois_rank = ctx.galois_two_rank();
        let i2 = two_torsion_count(ctx)?;
        let two_torsion_in_i = 1usize << galois_rank == i2;
        let ok = two_power && injective && mod2_injective && two_torsion_in_i && order % images.len() == 0;
        Ok((
            Status::from_bool(ok),
            json!({
                "jf5_order": order,
                "jf5_order_is_power_of_two": two_power,
                "i_order": images.len(),
                "pi_injective_on_i": injective,
                "two_jf5_size": doubled_j.len(),
                "pi_i_meet_two_jf5_size": meet.len(),
                "two_pi_i_size": doubled_pi.len(),
                "pi_i_mod_2_injects": mod2_injective,
                "jq_two_rank_galois": galois_rank,
                "i_two_torsion_size": i2,
                "i_contains_jq_two_torsion": two_torsion_in_i,
            }),
        ))
    })
}

fn rank_zero(ctx: &Context) -> Check {
    check(Stage::Torsion, "rank-zero", "the rank of J(Q) is 0", || {
        const SELMER_RANK: u32 = 3;
        let galois_rank = ctx.galois_two_rank();
        let t = ctx.torsion()?;
        let i_mod_2 = t.invariant_factors.iter().filter(|n| *n % 2 == 0).count() as u32;
        // dim J(Q)/2J(Q) = rank + dim J(Q)[2] <= dim Sel2
        let consistent = galois_rank == i_mod_2 && SELMER_RANK >= galois_rank;
        let status = if consistent {
            Status::Conditional
        } else {
            Status::Fail
        };
        Ok((
            status,
            json!({
                "assumption": "rank J(Q) = 0",
                "source": "2-descent: the 2-Selmer group of J over Q is (Z/2Z)^3 (external input, not recomputed)",
                "selmer_rank": SELMER_RANK,
                "jq_two_rank": galois_rank,
                "i_mod_2i_rank": i_mod_2,
                "rank_bound": SELMER_RANK.saturating_sub(galois_rank),
            }),
        ))
    })
}

fn two_torsion_witnesses(ctx: &Context) -> Check {
    check(
        Stage::TwoTorsion,
        "two-torsion-witnesses",
        "h(x) | f(x) or f=h_1^2-a h_2^2",
        || {
            let c = &ctx.curve;
            let t = ctx.torsion()?;
            let involutions: Vec<&(Vec<i64>, DivisorClass<Rational>)> = t
                .elements
                .iter()
                .filter(|(_, a)| !a.is_identity() && a.add(a, c).is_identity())
                .collect();
            let mut ok = involutions.len() == 7;
            let mut rows = Vec::new();
            for (v, a) in involutions {
                let rec = two_torsion_classify(a, c).map_err(|e| format!("{v:?}: {e}"))?;
                let (fun, w) = match &rec.witness {
                    TwoTorsionWitness::Polynomial { h } => {
                        let divides = h.degree().is_some_and(|d| d % 2 == 0) && c.f().rem(h).is_zero();
                        ok &= divides;
                        (
                            CurveFunction::from_poly(h.clone()),
                            json!({ "type": "h | f", "h": h.to_string() }),
                        )
                    }
                    TwoTorsionWitness::Norm { h1, a, h2 } => {
                        let aq = Rational::from_integer(a.clone());
                        let norm = h1.mul(h1).sub(&h2.mul(h2).scale(&aq)) == *c.f();
                        ok &= norm;
                        let y_minus_h1 = CurveFunction::new(h1.neg(), Poly::one(&()), Poly::one(&()));
                        (
                            y_minus_h1,
                            json!({ "type": "f = h1^2 - a h2^2", "h1": h1.to_string(), "a": a.to_string(), "h2": h2.to_string() }),
                        )
                    }
                };
                let div = divisor_of_function(c, &fun).map_err(|e| e.to_string())?;
                let expands = div == rec.representative.scale(2);
                ok &= expands;
                rows.push(json!({
                    "combination": v,
                    "d0": rec.d0.to_string(),
                    "witness": w,
                    "divisor_is_2d": expands,
                }));
            }
            Ok((Status::from_bool(ok), json!({ "involutions": rows })))
        },
    )
}

fn two_rank_galois(ctx: &Context) -> Check {
    check(
        Stage::TwoTorsion,
        "two-rank-galois",
        "I contains all the 2-torsion in J(Q)",
        || {
            let r = ctx.galois_two_rank();
            let i2 = two_torsion_count(ctx)?;
            Ok((
                Status::from_bool(r == 3 && 1usize << r == i2),
                json!({ "jq_two_rank": r, "i_two_torsion_size": i2 }),
            ))
        },
    )
}

fn two_rank_mod_p(ctx: &Context) -> Check {
    check(
        Stage::TwoTorsion,
        "two-rank-mod-p",
        "I[2] embeds in J(F5)[2]",
        || {
            let j = ctx.j5()?;
            let c5 = ctx.c5()?;
            let r5 = two_rank(j, c5, ctx.exec);
            let i2 = two_torsion_count(ctx)?;
            let ri = i2.trailing_zeros();
            Ok((
                Status::from_bool(r5 >= ri),
                json!({ "jf5_two_rank": r5, "i_two_rank": ri }),
            ))
        },
    )
}

fn row_json(r: &SweepRow) -> Value {
    json!({
        "index": r.index,
        "combination": r.combination,
        "ell": r.ell,
        "kind": r.kind,
        "effective": r.effective.as_ref().map(|d| d.to_string()),
        "basis": strings(&r.basis),
        "base_locus": r.base_locus.as_ref().map(|d| d.to_string()),
    })
}

fn sweep_check(ctx: &Context, k: i64) -> Check {
    let (stage, anchor, expected): (Stage, &str, &[(usize, usize)]) = match k {
        1 => (
            Stage::Sweep1,
            "l takes values 0,1 (120 and 8 instances)",
            &[(0, 120), (1, 8)],
        ),
        2 => (
            Stage::Sweep2,
            "(in 93 cases), (in 34 cases), l=2 once",
            &[(0, 93), (1, 34), (2, 1)],
        ),
        _ => (Stage::Sweep3, "precisely 120 values of i", &[(1, 120), (2, 8)]),
    };
    check(stage, &format!("sweep-degree-{k}"), anchor, || {
        let rows = ctx.sweep(k)?;
        let h = histogram(rows);
        let mut ok = h == expected.iter().copied().collect::<BTreeMap<_, _>>();
        if k == 3 {
            // degree-3 pencils have base points, so no member is irreducible
            ok &= rows
                .iter()
                .filter(|r| r.ell == 2)
                .all(|r| r.base_locus.as_ref().is_some_and(|b| b.degree() >= 1));
        }
        let rows: Vec<Value> = rows.iter().map(row_json).collect();
        Ok((
            Status::from_bool(ok),
            json!({ "degree": k, "histogram": hist_json(&h), "rows": rows }),
        ))
    })
}

fn rational_points_check(ctx: &Context) -> Check {
    check(
        Stage::Sweep1,
        "rational-points",
        "the eight rational points",
        || {
            let pts = rational_points(ctx.sweep(1)?);
            let mut expected = vec![Point::Infinity(Sign::Plus), Point::Infinity(Sign::Minus)];
            for (x, y) in [(0, 1), (0, -1), (1, 4), (1, -4), (-1, 4), (-1, -4)] {
                expected.push(Point::Affine { x: rat(x), y: rat(y) });
            }
            expected.sort();
            let h = ctx.config.point_search_height;
            let found = rational_point_search(h, ctx.exec);
            let extra: Vec<String> = found
                .iter()
                .filter(|p| !expected.contains(p))
                .map(|p| p.to_string())
                .collect();
            let ok = pts == expected && extra.is_empty() && pts.iter().all(|p| ctx.curve.contains(p));
            Ok((
                Status::from_bool(ok),
                json!({
                    "points": strings(&pts),
                    "search_height": h,
                    "search_found": found.len(),
                    "search_extra": extra,
                }),
            ))
        },
    )
}

fn quadratic_pencil(ctx: &Context) -> Check {
    check(
        Stage::Sweep2,
        "quadratic-pencil",
        "precisely when D_i=Q_1, has basis{1,x}",
        || {
            let rows = ctx.sweep(2)?;
            let pencils: Vec<&SweepRow> = rows.iter().filter(|r| r.ell == 2).collect();
            let expected_basis = vec![
                CurveFunction::from_poly(q(&[1])),
                CurveFunction::from_poly(q(&[0, 1])),
            ];
            let ok = pencils.len() == 1
                && pencils[0].combination == [1, 0, 0]
                && pencils[0].basis == expected_basis;
            let rows: Vec<Value> = pencils.iter().map(|r| row_json(r)).collect();
            Ok((Status::from_bool(ok), json!({ "pencils": rows })))
        },
    )
}

fn quadratic_irreducible(ctx: &Context) -> Check {
    check(
        Stage::Sweep2,
        "quadratic-irreducible",
        "(i,4)+(-i,4), and (i,-4)+(-i,-4)",
        || {
            let rows = ctx.sweep(2)?;
            let irr = irreducible_places(rows);
            let found: Vec<(Vec<i64>, Place<Rational>)> = irr
                .iter()
                .map(|(r, p)| (r.combination.clone(), p.clone()))
                .collect();
            let expected = vec![
                (
                    vec![0, 3, 4],
                    Place::Affine {
                        u: q(&[1, 0, 1]),
                        v: q(&[4]),
                    },
                ),
                (
                    vec![2, 1, 4],
                    Place::Affine {
                        u: q(&[1, 0, 1]),
                        v: q(&[-4]),
                    },
                ),
            ];
            let list: Vec<Value> = found
                .iter()
                .map(|(v, p)| json!({ "combination": v, "place": p.to_string() }))
                .collect();
            Ok((Status::from_bool(found == expected), json!({ "places": list })))
        },
    )
}

/// A place with the coordinates of its torsion class.
type TaggedPlace = (Vec<i64>, Place<Rational>);

fn cubic_places(ctx: &Context) -> Result<Vec<TaggedPlace>, String> {
    Ok(irreducible_places(ctx.sweep(3)?)
        .into_iter()
        .map(|(r, p)| (r.combination.clone(), p))
        .collect())
}

fn theta_place() -> Place<Rational> {
    Place::Affine {
        u: q(&[1, 2, -2, 1]),
        v: q(&[-1, 1, 2]),
    }
}

fn cubic_points(ctx: &Context) -> Check {
    check(Stage::Sweep3, "cubic-points", "only 16 of the 120", || {
        let c = &ctx.curve;
        let cubic = cubic_places(ctx)?;
        let places: Vec<&Place<Rational>> = cubic.iter().map(|(_, p)| p).collect();
        let mut ok = cubic.len() == 16 && places.contains(&&theta_place());
        for p in &places {
            let valid = match p {
                Place::Affine { u, v } => {
                    u.degree() == Some(3)
                        && factor_q(u).is_irreducible()
                        && v.mul(v).sub(c.f()).rem(u).is_zero()
                }
                _ => false,
            };
            ok &= valid && places.contains(&&p.conjugate());
        }
        let list: Vec<Value> = cubic
            .iter()
            .map(|(v, p)| json!({ "combination": v, "place": p.to_string() }))
            .collect();
        Ok((
            Status::from_bool(ok),
            json!({ "count": cubic.len(), "contains_theta_example": places.contains(&&theta_place()), "places": list }),
        ))
    })
}

fn verdict_text(pb: &Pullback) -> String {
    let d = pb.field_degree();
    if pb.lifts_to_base() {
        format!("degree {d}: defined over the base field")
    } else {
        format!(
            "degree {d}: not defined over the base field of degree {}",
            pb.base_degree
        )
    }
}

fn pullback_json(pb: &Pullback) -> Value {
    let mut w = serde_json::to_value(pb.summary()).expect("summary serializes");
    w["verdict"] = json!(verdict_text(pb));
    w["maps_back"] = json!(map_to_c(&pb.preimage).ok() == Some(pb.image.clone()));
    w
}

fn certificate_ok(pb: &Pullback) -> bool {
    match &pb.verdict {
        SquareVerdict::NonSquare(cert) => cert.verify(&pb.q_minus_value),
        SquareVerdict::Square(r) => r.square() == pb.q_minus_value,
    }
}

fn pullback_cubic(ctx: &Context) -> Check {
    check(
        Stage::Pullback,
        "pullback-cubic",
        "none of these pull back to cubic points on S",
        || {
            let cubic = cubic_places(ctx)?;
            let places: Vec<Place<Rational>> = cubic.iter().map(|(_, p)| p.clone()).collect();
            let results = pullback_all(&places, ctx.exec);
            let mut ok = places.len() == 16;
            let mut degrees = BTreeMap::new();
            let mut list = Vec::new();
            for r in results {
                let pb = r.map_err(|e| e.to_string())?;
                ok &= pb.field_degree() == 6 && !pb.lifts_to_base() && certificate_ok(&pb);
                ok &= map_to_c(&pb.preimage).ok() == Some(pb.image.clone());
                *degrees.entry(pb.field_degree()).or_insert(0usize) += 1;
                list.push(pullback_json(&pb));
            }
            Ok((
                Status::from_bool(ok),
                json!({ "field_degrees": hist_json(&degrees), "pullbacks": list }),
            ))
        },
    )
}

fn nf(l: &Arc<NfCtx>, c: &[i64]) -> NumberFieldElement {
    NumberFieldElement::from_poly(l, &q(c))
}

fn pullback_theta() -> Check {
    check(
        Stage::Pullback,
        "pullback-theta",
        "phi^6 - 2phi^4 - 2phi^2 - 1 = 0 (phi^2=-1/theta)",
        || {
            let pb = pullback(&theta_place()).map_err(|e| e.to_string())?;
            let l = &pb.field;
            let poly_ok = *l.modulus() == q(&[-1, 0, -2, 0, -2, 0, 1]);
            let phi = l.generator();
            let theta = phi.square().inv().ok_or("phi is zero")?.neg();
            let k = |n| NumberFieldElement::from_rational(l, rat(n));
            let y = theta.square().mul(&k(2)).add(&theta).sub(&k(1));
            let image_ok = pb.image == (theta.clone(), y.clone());
            let displayed = SPoint::new(
                nf(l, &[2, 0, 2, 0, -1]),
                phi.clone(),
                nf(l, &[0, 0, -2, 0, 1]),
                nf(l, &[0, -3, 0, -4, 0, 2]),
                nf(l, &[0, 0, 4, 0, -1]),
            )
            .map_err(|e| format!("displayed tuple: {e}"))?;
            let displayed_image = map_to_c(&displayed).map_err(|e| e.to_string())?;
            let b_negated = SPoint {
                b: displayed.b.neg(),
                ..displayed.clone()
            };
            let proportional = pb.preimage.is_proportional(&b_negated);
            let ok = poly_ok && image_ok && proportional && pb.field_degree() == 6 && certificate_ok(&pb);
            let mut w = pullback_json(&pb);
            w["displayed_tuple"] = json!(strings(displayed.coords()));
            w["displayed_tuple_lies_over"] = json!(format!("({}, {})", displayed_image.0, displayed_image.1));
            w["displayed_over_minus_y"] = json!(displayed_image == (theta, y.neg()));
            w["preimage_is_displayed_with_b_negated"] = json!(proportional);
            Ok((Status::from_bool(ok), w))
        },
    )
}

fn pullback_quadratic() -> Check {
    check(
        Stage::Pullback,
        "pullback-quadratic",
        "(a,b,c,d,e)=(sqrt2, 1, 0, i, i sqrt2)",
        || {
            let mut ok = true;
            let mut list = Vec::new();
            for v in [4, -4] {
                let pb = pullback(&Place::Affine {
                    u: q(&[1, 0, 1]),
                    v: q(&[v]),
                })
                .map_err(|e| e.to_string())?;
                ok &= pb.field_degree() == 4 && *pb.field.modulus() == q(&[1, 0, 0, 0, 1]);
                ok &= map_to_c(&pb.preimage).ok() == Some(pb.image.clone());
                let mut w = pullback_json(&pb);
                if v == 4 {
                    // zeta^4 = -1: i = zeta^2, sqrt2 = zeta - zeta^3
                    let m = &pb.field;
                    let k = |n| NumberFieldElement::from_rational(m, rat(n));
                    let displayed = SPoint::new(
                        nf(m, &[0, 1, 0, -1]),
                        k(1),
                        k(0),
                        nf(m, &[0, 0, 1]),
                        nf(m, &[0, 1, 0, 1]),
                    )
                    .map_err(|e| format!("displayed tuple: {e}"))?;
                    let b_negated = SPoint {
                        b: displayed.b.neg(),
                        ..displayed.clone()
                    };
                    let proportional = pb.preimage.is_proportional(&b_negated);
                    ok &= proportional;
                    w["displayed_tuple"] = json!(strings(displayed.coords()));
                    w["preimage_is_displayed_with_b_negated"] = json!(proportional);
                }
                list.push(w);
            }
            Ok((Status::from_bool(ok), json!({ "pullbacks": list })))
        },
    )
}

fn pullback_place(u: &str, v: &str) -> Check {
    check(Stage::Pullback, "pullback-point", "pullback to S", || {
        let u = parse_poly(u).map_err(|e| format!("u: {e}"))?;
        let v = parse_poly(v).map_err(|e| format!("v: {e}"))?;
        let d = u.degree().ok_or("u is zero")?;
        if d == 0 || d > 3 {
            return Err(format!("u must have degree 1, 2 or 3, got {d}"));
        }
        if !factor_q(&u).is_irreducible() {
            return Err(format!("u = {u} is reducible over Q"));
        }
        let u = u.monic();
        let v = v.rem(&u);
        let c = octic_curve();
        if !v.mul(&v).sub(c.f()).rem(&u).is_zero() {
            return Err(format!("v^2 - f is not divisible by u = {u}"));
        }
        let pb = pullback(&Place::Affine { u, v }).map_err(|e| e.to_string())?;
        Ok((Status::from_bool(certificate_ok(&pb)), pullback_json(&pb)))
    })
}

fn quotient_identity() -> Check {
    check(Stage::Identity, "quotient-identity", "4bd(a-2c+e)^2", || {
        let r = verify_quotient_identity();
        Ok((
            Status::from_bool(r.holds()),
            serde_json::to_value(&r).expect("serializes"),
        ))
    })
}

fn quotient_map_mod_p(ctx: &Context) -> Check {
    check(
        Stage::Identity,
        "quotient-map-mod-p",
        "x^4-2x^3+2x^2+2x+1 is a square",
        || {
            let runs: Vec<_> = ctx
                .config
                .map_primes
                .iter()
                .map(|&p| check_map_mod_p(p, ctx.config.map_samples, ctx.config.seed))
                .collect();
            let samples: usize = runs.iter().map(|r| r.samples).sum();
            let failures: usize = runs.iter().map(|r| r.failures).sum();
            Ok((
                Status::from_bool(failures == 0 && samples >= 500),
                json!({ "samples": samples, "failures": failures, "primes": runs }),
            ))
        },
    )
}

fn gjx_check(ctx: &Context, height: i64) -> Check {
    check(
        Stage::Gjx,
        "gjx-scan",
        "precisely one of t^4 -+ 2t^3+2t^2 +- 2t+1 be a rational square",
        || {
            let recs = gjx_scan(height, ctx.exec);
            let mut ok = true;
            let mut list = Vec::new();
            for r in &recs {
                match (&r.progression, r.condition) {
                    (Some(pr), true) => {
                        ok &= pr.is_progression() && pr.point_verified && pr.d != BigInt::one();
                        list.push(json!({
                            "t": r.t.to_string(),
                            "d": pr.d.to_string(),
                            "x": strings(&pr.x),
                            "progression": pr.is_progression(),
                            "point_verified": pr.point_verified,
                        }));
                    }
                    (None, false) => {}
                    _ => ok = false,
                }
            }
            ok &= !list.is_empty();
            Ok((
                Status::from_bool(ok),
                json!({
                    "height": height,
                    "scanned": recs.len(),
                    "passing": list.len(),
                    "progressions": list,
                }),
            ))
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Context {
        Context::new(Config::default(), Exec::Parallel)
    }

    #[test]
    fn cheap_checks_pass() {
        let c = ctx();
        for ch in [
            curve_model(&c),
            good_reduction(&c),
            jacobian_order_check(&c, 5),
            quotient_identity(),
        ] {
            assert_eq!(ch.status, Status::Pass, "{}: {}", ch.id, ch.witness);
        }
    }

    #[test]
    fn jf7_order_is_a_multiple_of_128() {
        let ch = jacobian_order_check(&ctx(), 7);
        assert_eq!(ch.status, Status::Pass, "{}", ch.witness);
    }

    #[test]
    fn failures_carry_the_error() {
        let ch = pullback_place("x^2 - 1", "0");
        assert_eq!(ch.status, Status::Fail);
        assert!(ch.witness["error"].as_str().unwrap().contains("reducible"));
        let ch = pullback_place("x^2 + 1", "5");
        assert_eq!(ch.status, Status::Fail);
    }

    #[test]
    fn user_place_pullback() {
        let ch = pullback_place("x^2+1", "4");
        assert_eq!(ch.status, Status::Pass, "{}", ch.witness);
        assert_eq!(ch.witness["field_degree"], 4);
    }
}
