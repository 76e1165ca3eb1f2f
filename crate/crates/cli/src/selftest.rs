use std::fmt::Write as _;
use std::path::Path;

use posetrep::classify::{
    analyze, decide_rep_finite, gldim_le_2, minimality_check, replay_reduction, simply_connected, Answer, Certificate,
    ClassifyConfig,
};
use posetrep::concealed::{certify_concealed, quasi_tilted_obstruction, IsoLayer};
use posetrep::frames::{loupias_frame, loupias_frames, validate_dir};
use posetrep::grothendieck::{g_fan, negative_cone_samples, verify_notgtame};
use posetrep::knitting::{a_tilde_tilde, hom_profile, knit, tip_ladder};
use posetrep::linrep::BoundAlgebra;
use posetrep::poset::families::{a_tilde_cycle, cell_diamond, chain, figure8};
use posetrep::poset::Poset;
use posetrep::quiver::{is_hyperbolic, Quiver};

use crate::commands::classify_config;
use crate::{Options, Outcome};

enum Status {
    Pass,
    Fail(String),
    /// The configured budget was too small to decide; not a mismatch.
    Skip(String),
}

struct Check {
    name: &'static str,
    /// Window the check needs to be conclusive.
    needs_window: usize,
    run: fn(&Ctx) -> Result<(), String>,
}

struct Ctx {
    cfg: ClassifyConfig,
    window: usize,
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn product(n: usize, m: usize) -> Poset {
    chain(n).unwrap().product(&chain(m).unwrap()).unwrap()
}

fn seven() -> Poset {
    Poset::parse("ml < c < e < xl\nml < d < xl\nml < xr\nmr < xr\nmr < xl\n").unwrap()
}

fn rep(p: &Poset, ctx: &Ctx) -> Result<Answer, String> {
    decide_rep_finite(p, ctx.cfg.cap).map(|v| v.answer).map_err(|e| e.to_string())
}

const CHECKS: &[Check] = &[
    Check {
        name: "products of chains",
        needs_window: 0,
        run: |ctx| {
            for n in 1..=6 {
                for m in n..=6 {
                    let finite = n == 1 || matches!((n, m), (2, 2) | (2, 3) | (2, 4));
                    let want = if finite { Answer::Yes } else { Answer::No };
                    ensure(rep(&product(n, m), ctx)? == want, format!("{n}x{m}"))?;
                }
            }
            Ok(())
        },
    },
    Check {
        name: "reduction certificate replays",
        needs_window: 0,
        run: |ctx| {
            let p = product(2, 5);
            let v = decide_rep_finite(&p, ctx.cfg.cap).map_err(|e| e.to_string())?;
            let Certificate::Reduction { steps, frame, .. } = &v.certificate else { return Err("no certificate".into()) };
            ensure(replay_reduction(&p, steps, frame).map_err(|e| e.to_string())?, "replay failed")
        },
    },
    Check {
        name: "frames are minimal",
        needs_window: 0,
        run: |ctx| {
            for f in loupias_frames() {
                for o in [f.base_poset(), f.base_poset().opposite()] {
                    let v = minimality_check(&o, ctx.cfg.cap).map_err(|e| e.to_string())?;
                    ensure(v.answer == Answer::Yes, f.id.clone())?;
                }
            }
            Ok(())
        },
    },
    Check {
        name: "diamond ladder",
        needs_window: 0,
        run: |ctx| {
            for l in 2..=6 {
                let a = analyze(&cell_diamond(l).unwrap(), &ctx.cfg).map_err(|e| e.to_string())?;
                ensure(a.rep_finite.answer == Answer::No, format!("l={l} rep"))?;
                ensure(a.simply_connected.answer == Answer::Yes, format!("l={l} simply connected"))?;
                let wild = l >= 5;
                ensure(a.tame.answer == if wild { Answer::No } else { Answer::Yes }, format!("l={l} tame"))?;
                if wild {
                    ensure(a.g_tame.answer == Answer::No, format!("l={l} g-tame"))?;
                    let named = matches!(&a.tame.certificate,
                        Certificate::WildHereditary { frame: Some(f), .. } if f == "T5");
                    ensure(named, format!("l={l} witness"))?;
                }
            }
            Ok(())
        },
    },
    Check {
        name: "simple connectedness",
        needs_window: 0,
        run: |_| {
            let crown = a_tilde_cycle("+-+-").unwrap();
            ensure(simply_connected(&crown).map_err(|e| e.to_string())?.answer == Answer::No, "crown")?;
            ensure(simply_connected(&seven()).map_err(|e| e.to_string())?.answer == Answer::No, "seven-element poset")
        },
    },
    Check {
        name: "global dimension criterion",
        needs_window: 0,
        run: |_| {
            ensure(gldim_le_2(&cell_diamond(4).unwrap()).answer == Answer::No, "C4 diamond")?;
            ensure(gldim_le_2(&chain(4).unwrap()).answer == Answer::Yes, "chain")?;
            ensure(gldim_le_2(&figure8()).answer == Answer::Yes, "figure eight")
        },
    },
    Check {
        name: "seven-element poset",
        needs_window: 0,
        run: |ctx| {
            let p = seven();
            let alg = BoundAlgebra::incidence(&p);
            let m = quasi_tilted_obstruction(&alg, 512).ok_or("no obstruction")?;
            let want: Vec<i64> = p.names().iter().map(|n| i64::from(["ml", "mr", "xl", "xr"].contains(&n.as_str()))).collect();
            ensure(m.dim_vector() == want, format!("obstruction {:?}", m.dim_vector()))?;
            let a = analyze(&p, &ctx.cfg).map_err(|e| e.to_string())?;
            ensure(a.g_tame.answer == Answer::Unknown, "g-tame should stay undecided")
        },
    },
    Check {
        name: "Kronecker-type quiver",
        needs_window: 0,
        run: |_| {
            let q = Quiver::parse("1 -> 2\n1 -> 2\n1 -> 2").unwrap();
            ensure(is_hyperbolic(&q).unwrap() && q.tits(&[1, 1]) == -1, "K(3)")
        },
    },
    Check {
        name: "knitting ladders",
        needs_window: 4,
        run: |ctx| {
            for (p, q, want) in [(3, 3, [0, 1, 1, 2]), (2, 3, [0, 1, 2, 3]), (1, 3, [0, 2, 3, 5])] {
                let (quiver, a, b) = a_tilde_tilde(p, q);
                let c = knit(&quiver, ctx.window).map_err(|e| e.to_string())?;
                let source = c.node(a, 0).map_err(|e| e.to_string())?;
                let got = tip_ladder(&c, &hom_profile(&c, source), a, b).map_err(|e| e.to_string())?;
                ensure(got == want, format!("p={p}: {got:?}"))?;
            }
            Ok(())
        },
    },
    Check {
        name: "g-vector fans",
        needs_window: 0,
        run: |_| {
            let a2 = BoundAlgebra::path_algebra(&Quiver::parse("1 -> 2").unwrap());
            let f = g_fan(&a2, 20, 3).map_err(|e| e.to_string())?;
            ensure(f.complete && f.rays.len() == 5, "A2")?;
            let kr = BoundAlgebra::path_algebra(&Quiver::parse("1 -> 2\n1 -> 2").unwrap());
            let f = g_fan(&kr, 20, 3).map_err(|e| e.to_string())?;
            ensure(!f.complete && f.exterior_witness.is_some(), "Kronecker")
        },
    },
    Check {
        name: "R1 frame is concealed",
        needs_window: 6,
        run: |ctx| {
            let p = loupias_frame("R1").map_err(|e| e.to_string())?.base_poset();
            let e7 = posetrep::concealed::type_quiver(posetrep::quiver::GraphType::Euclidean(posetrep::quiver::Letter::E, 7))
                .ok_or("no E~7 quiver")?;
            let s = certify_concealed(&BoundAlgebra::incidence(&p), &[("E~7".into(), e7)], ctx.window, 512)
                .map_err(|e| e.to_string())?;
            let c = s.certificate.ok_or("no certificate")?;
            ensure(c.iso_layer >= IsoLayer::CartanAndQuiver, "layer")
        },
    },
    Check {
        name: "negative cone over K(3)",
        needs_window: 4,
        run: |ctx| {
            let q = Quiver::parse("1 -> 2\n1 -> 2\n1 -> 2").unwrap();
            let xs = negative_cone_samples(&q, 3, 6);
            let r = verify_notgtame(&q, &[(0, 0), (1, 0)], &xs, ctx.window, 64).map_err(|e| e.to_string())?;
            ensure(r.samples.iter().all(|s| s.postprojectives_negative && s.transfer_identity), "sample failed")
        },
    },
];

pub fn run(opts: &Options, frames_dir: Option<&Path>) -> Outcome {
    let ctx = Ctx { cfg: classify_config(opts), window: opts.window };
    let mut out = String::new();
    let mut failed = 0;
    let mut results = Vec::new();
    if let Some(dir) = frames_dir {
        let status = match validate_dir(dir) {
            Ok(_) => Status::Pass,
            Err(e) => Status::Fail(format!("frame validation: {e}")),
        };
        results.push(("frames directory", status));
    }
    for c in CHECKS {
        let status = match (c.run)(&ctx) {
            Ok(()) => Status::Pass,
            Err(msg) if ctx.window < c.needs_window => {
                Status::Skip(format!("window {} below {} ({msg})", ctx.window, c.needs_window))
            }
            Err(msg) => Status::Fail(msg),
        };
        results.push((c.name, status));
    }
    let mut skipped = 0;
    for (name, status) in &results {
        let line = match status {
            Status::Pass => format!("PASS  {name}"),
            Status::Fail(m) => {
                failed += 1;
                format!("FAIL  {name}: {m}")
            }
            Status::Skip(m) => {
                skipped += 1;
                format!("SKIP  {name}: budget-flagged, {m}")
            }
        };
        let _ = writeln!(out, "{line}");
    }
    let _ = writeln!(out, "{} passed, {failed} failed, {skipped} skipped", results.len() - failed - skipped);
    Outcome { output: out, code: u8::from(failed > 0) }
}
