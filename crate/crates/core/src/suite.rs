//! The full battery of checks run by `smdt verify` on one semimatroid.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::broken_circuit::{bc_complex, bc_f_polynomial_closed, bc_shedding_order, critical_nbc, NbcOrder};
use crate::collapse::collapse_to_bc;
use crate::complex::Face;
use crate::error::Result;
use crate::homology::{poincare_from_homology, reduced_betti};
use crate::semimatroid::{
    check_spi, matroid_closure, semimatroid_from_spi, spi_violations, Semimatroid, Strategy, Target,
};
use crate::tree::{check_element_tree, check_set_tree, evasive_polynomial, interval_partition, random_element_tree};
use crate::verification::{
    check_decidability_decomposition, check_equidimensional, check_morse_inequalities, check_optimal,
};

pub const TARGETS: [Target; 3] = [Target::Rank, Target::Nullity, Target::Constant];
pub const STRATEGIES: [Strategy; 3] = [Strategy::Any, Strategy::Min, Strategy::Max];

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: Value,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_json(&self) -> Value {
        json!({ "passed": self.passed(), "checks": self.checks, "notes": self.notes })
    }

    /// Runs `body`; `Ok(Err(w))` and `Err(e)` both record a failure.
    fn run(&mut self, name: &'static str, body: impl FnOnce() -> Result<std::result::Result<Value, Value>>) {
        let (passed, detail) = match body() {
            Ok(Ok(v)) => (true, v),
            Ok(Err(w)) => (false, w),
            Err(e) => (false, json!({ "error": e.to_string() })),
        };
        self.checks.push(Check { name, passed, detail });
    }
}

fn faces(s: &Semimatroid, fs: &[Face]) -> Vec<String> {
    fs.iter().map(|&f| s.ground().format_face(f)).collect()
}

fn target_name(t: Target) -> &'static str {
    match t {
        Target::Rank => "rank",
        Target::Nullity => "nullity",
        Target::Constant => "constant",
    }
}

fn d_of(s: &Semimatroid, target: Target, p: usize) -> usize {
    match target {
        Target::Rank => p,
        Target::Nullity => p + s.rank(),
        Target::Constant => s.rank(),
    }
}

/// `random_trees` random valid trees per target are drawn from `seed` for the Morse check.
pub fn run_suite(s: &Semimatroid, seed: u64, random_trees: usize) -> Report {
    let mut report = Report::default();
    let violations = s.check_axioms();
    report.run("axioms", || {
        if violations.is_empty() {
            return Ok(Ok(json!({ "elements": s.elements().len(), "faces": s.complex().len() })));
        }
        let list: Vec<String> = violations.iter().take(10).map(|v| v.to_string()).collect();
        Ok(Err(json!({ "violations": violations.len(), "first": list })))
    });
    if !violations.is_empty() {
        report.notes.push("axioms fail; remaining checks skipped".into());
        return report;
    }

    let tutte = s.tutte_sum();
    report.run("tutte", || {
        for strategy in STRATEGIES {
            let rec = s.tutte_recurrence(strategy);
            if rec != tutte {
                return Ok(Err(
                    json!({ "strategy": strategy, "sum": tutte.to_string(), "recurrence": rec.to_string() }),
                ));
            }
        }
        Ok(Ok(json!({ "polynomial": tutte.to_string(), "beta": s.beta() })))
    });

    report.run("trees", || {
        for target in TARGETS {
            let f = s.target_map(target);
            for strategy in STRATEGIES {
                let t = s.build_tree(target, strategy);
                if let Err(v) = check_element_tree(&t, &f) {
                    return Ok(Err(
                        json!({ "target": target_name(target), "strategy": strategy, "violation": v.to_string() }),
                    ));
                }
                if let Err(v) = check_set_tree(&t.to_set_tree(), &f) {
                    return Ok(Err(json!({ "target": target_name(target), "set_tree": v.to_string() })));
                }
            }
        }
        Ok(Ok(Value::Null))
    });

    report.run("poincare", || {
        let mut out = serde_json::Map::new();
        for target in TARGETS {
            let f = s.target_map(target);
            let closed = s.poincare_closed(target)?;
            let homology = poincare_from_homology(&f)?;
            for strategy in STRATEGIES {
                let ev = evasive_polynomial(&s.build_tree(target, strategy), &f)?;
                if ev != closed || ev != homology.polynomial {
                    return Ok(Err(json!({
                        "target": target_name(target),
                        "strategy": strategy,
                        "tree": ev.to_string(),
                        "closed": closed.to_string(),
                        "homology": homology.polynomial.to_string(),
                    })));
                }
            }
            if !homology.torsion.values().all(Vec::is_empty) {
                return Ok(Err(json!({ "target": target_name(target), "torsion": format!("{:?}", homology.torsion) })));
            }
            out.insert(target_name(target).into(), json!(closed.to_string()));
        }
        Ok(Ok(Value::Object(out)))
    });

    report.run("optimality", || {
        for target in TARGETS {
            let f = s.target_map(target);
            let t = s.build_tree(target, Strategy::Any);
            if !check_optimal(&t, &f)? {
                return Ok(Err(json!({ "target": target_name(target) })));
            }
            let eq = check_equidimensional(&t, &f, |p| d_of(s, target, p))?;
            if !eq.premise || eq.optimal != Some(true) {
                return Ok(Err(
                    json!({ "target": target_name(target), "equidimensional": eq.finding.map(|x| x.witness) }),
                ));
            }
        }
        Ok(Ok(Value::Null))
    });

    report.run("morse", || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut strict = 0;
        for target in TARGETS {
            let f = s.target_map(target);
            for _ in 0..random_trees {
                let t = random_element_tree(&f, &mut rng, 0.3);
                if let Some(c) = check_morse_inequalities(&t, &f)? {
                    return Ok(Err(json!({ "target": target_name(target), "level": c })));
                }
                if !check_optimal(&t, &f)? {
                    strict += 1;
                }
            }
        }
        Ok(Ok(json!({ "trees": random_trees * TARGETS.len(), "suboptimal": strict })))
    });

    report.run("wedge_of_spheres", || {
        let b = reduced_betti(s.complex())?;
        let beta = s.beta() as usize;
        let top = s.rank() as i32 - 1;
        let concentrated = b.betti.iter().all(|(&d, &x)| if d == top { x == beta } else { x == 0 });
        if !b.is_torsion_free() || !concentrated || b.get(top) != beta {
            return Ok(Err(json!({ "homology": b.to_json(), "degree": top, "beta": beta })));
        }
        Ok(Ok(b.to_json()))
    });

    report.run("broken_circuits", || {
        let order = NbcOrder::natural(s);
        let bc = bc_complex(s, &order);
        let fp = crate::broken_circuit::f_polynomial(&bc.complex);
        let closed = bc_f_polynomial_closed(s)?;
        let b = reduced_betti(&bc.complex)?;
        let beta = s.beta() as usize;
        let top = s.rank() as i32 - 1;
        let concentrated = b.betti.iter().all(|(&d, &x)| if d == top { x == beta } else { x == 0 });
        let critical = critical_nbc(s, &order);
        let cert = bc_shedding_order(s);
        if fp != closed || !b.is_torsion_free() || !concentrated || critical.len() != beta || cert.is_err() {
            return Ok(Err(json!({
                "f_polynomial": fp.to_string(),
                "closed": closed.to_string(),
                "homology": b.to_json(),
                "critical": faces(s, &critical),
                "beta": beta,
                "certificate": cert.err().map(|e| e.to_string()),
            })));
        }
        Ok(Ok(json!({
            "void": bc.complex.is_void(),
            "facets": faces(s, &bc.complex.facets()),
            "f_polynomial": fp.to_string(),
            "critical": faces(s, &critical),
        })))
    });
    if bc_complex(s, &NbcOrder::natural(s)).complex.is_void() {
        report.notes.push("broken circuit complex is void (a loop is present); Δ collapses to a single vertex".into());
    }

    report.run("intervals", || {
        for target in TARGETS {
            let f = s.target_map(target);
            let ivs = interval_partition(&s.build_tree(target, Strategy::Any).to_set_tree(), &f)?;
            let total: usize = ivs.iter().map(|iv| iv.size()).sum();
            let constant = ivs.iter().all(|iv| iv.faces().all(|g| f.value(g) == Some(iv.value)));
            let disjoint_cover = s.complex().faces().all(|g| ivs.iter().filter(|iv| iv.contains(g)).count() == 1);
            if total != s.complex().len() || !constant || !disjoint_cover {
                return Ok(Err(json!({ "target": target_name(target), "sizes": total, "faces": s.complex().len() })));
            }
        }
        Ok(Ok(Value::Null))
    });

    report.run("collapse", || {
        let (seq, bc) = collapse_to_bc(s)?;
        let residual = seq.replay(s.complex())?;
        let ok = if bc.complex.is_void() { residual.len() == 2 } else { residual.same_faces(&bc.complex) };
        if !ok {
            return Ok(Err(json!({ "residual": faces(s, &residual.sorted_faces()) })));
        }
        Ok(Ok(json!({ "steps": seq.len(), "residual": faces(s, &residual.facets()) })))
    });

    report.run("decomposition", || {
        for target in TARGETS {
            let t = s.build_tree(target, Strategy::Any);
            if let Some(x) = t.root_element() {
                if !s.complex().is_vertex(x) {
                    continue;
                }
                if let Some(m) = check_decidability_decomposition(&s.target_map(target), x)? {
                    return Ok(Err(json!({ "target": target_name(target), "vertex": x, "mismatch": m })));
                }
            }
        }
        Ok(Ok(Value::Null))
    });

    report.run("spi_round_trip", || {
        let m = matroid_closure(s);
        if !check_spi(s.complex(), &m) {
            let v: Vec<Value> = spi_violations(s.complex(), &m)
                .iter()
                .take(5)
                .map(|v| json!({ "sigma": s.ground().format_face(v.sigma), "x": v.x, "strong": v.strong }))
                .collect();
            return Ok(Err(json!({ "spi": v })));
        }
        let back = semimatroid_from_spi(&m, s.complex())?;
        if back != *s {
            return Ok(Err(json!({ "round_trip": "rank tables differ" })));
        }
        Ok(Ok(json!({ "matroid_rank": m.rank() })))
    });
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical;

    #[test]
    fn canonical_instances_pass() {
        for (name, s) in canonical::all() {
            let r = run_suite(&s, 7, 5);
            assert!(r.passed(), "{name}: {}", r.to_json());
        }
        let r = run_suite(&canonical::instance("E").unwrap(), 0, 1);
        assert_eq!(r.notes.len(), 1);
    }

    #[test]
    fn invalid_input_stops_early() {
        let c = canonical::instance("B").unwrap();
        let bad = Semimatroid::from_fn(c.complex().clone(), |f| 2 * f.len()).unwrap();
        let r = run_suite(&bad, 0, 1);
        assert!(!r.passed());
        assert_eq!(r.checks.len(), 1);
    }
}
