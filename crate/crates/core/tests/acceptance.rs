//! Acceptance criteria. Each test prints one `ACCEPTANCE` line to stderr and
//! panics when its criterion fails.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;
use std::time::{Duration, Instant};

use num_integer::Integer;
use rand::Rng;

use common::*;
use skeleta::fixtures;
use skeleta::graph::{edge_length, graph_genus, stable_gap};
use skeleta::model_ops::verify_metric_invariance;
use skeleta::potential::{
    all_spanning_trees, canonical_divisor, laplacian, maximal_bridge_chains, solve_poisson,
    GraphDivisor,
};
use skeleta::skeleton::{
    canonical_form_locus, combinatorial_skeleton, essential_skeleton, witness_bridge_chain,
    witness_cycle_with_tree, witness_union_locus,
};
use skeleta::weight::{ks_skeleton, vertex_weights, weight_function, PluricanonicalModelData};
use skeleta::{Graph, GraphPoint, Locus, MetricKind, Scalar, WeightedDualGraph};

/// Runs `check`, reports the outcome and fails the test on error or timeout.
fn criterion(
    n: u32,
    name: &str,
    limit: Option<Duration>,
    check: impl FnOnce() -> Result<(), String>,
) {
    let start = Instant::now();
    let result = check();
    let took = start.elapsed();
    let result = match (result, limit) {
        (Ok(()), Some(l)) if took > l => Err(format!("took {took:?}, limit {l:?}")),
        (r, _) => r,
    };
    let timing = match limit {
        Some(l) => format!("{:.3}s < {}s", took.as_secs_f64(), l.as_secs()),
        None => format!("{:.3}s", took.as_secs_f64()),
    };
    let verdict = if result.is_ok() { "PASS" } else { "FAIL" };
    let line = format!("ACCEPTANCE {n:>2} {verdict} {name} ({timing})");
    // Written to the stderr handle directly so the harness does not capture it.
    #[allow(clippy::explicit_write)]
    writeln!(std::io::stderr(), "{line}").unwrap();
    if let Err(why) = result {
        panic!("{line}: {why}");
    }
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

#[test]
fn c01_kodaira_ii() {
    criterion(
        1,
        "kodaira-II weights, laplacian and skeleta",
        secs(1),
        || {
            let g: Graph = fixtures::kodaira_ii();
            let mut lengths: Vec<Q> = g.edges().iter().map(|e| e.length.clone()).collect();
            lengths.sort();
            ensure(lengths == vec![q(1, 18), q(1, 12), q(1, 6)], || {
                format!("lengths {lengths:?}")
            })?;

            let mut data = PluricanonicalModelData::new(1);
            for (id, nu) in [("v1", 1), ("v2", 2), ("v3", 3), ("v4", 5)] {
                data.nu.insert(id.into(), nu);
            }
            let w = vertex_weights(&g, &data).map_err(|e| e.to_string())?;
            ensure(w == vec![q(1, 1), q(1, 1), q(1, 1), q(5, 6)], || {
                format!("weights {w:?}")
            })?;

            let wt = weight_function(&g, &data).map_err(|e| e.to_string())?;
            let expected: BTreeMap<GraphPoint<Q>, Q> = [(0, -1), (1, -2), (2, -3), (3, 6)]
                .into_iter()
                .map(|(v, c)| (GraphPoint::Vertex(v), q(c, 1)))
                .collect();
            let lap = divisor_map(&laplacian(&g, &wt).map_err(|e| e.to_string())?);
            ensure(lap == expected, || format!("laplacian {lap:?}"))?;
            ensure(laplacian_oracle(&g, &wt, true) == expected, || {
                "oracle laplacian differs".into()
            })?;
            let k = divisor_map(&canonical_divisor(&g, 1).map_err(|e| e.to_string())?);
            ensure(k == expected, || format!("canonical divisor {k:?}"))?;

            let ks = ks_skeleton(&g, &data).map_err(|e| e.to_string())?;
            ensure(ks == Locus::from_vertices([3]), || {
                format!("KS skeleton {ks:?}")
            })?;
            let sk = essential_skeleton(&g).map_err(|e| e.to_string())?;
            let ids: Vec<&str> = sk.vertices().iter().map(|v| v.id.as_str()).collect();
            ensure(ids == ["v4"] && sk.num_edges() == 0, || {
                format!("essential skeleton {ids:?}")
            })
        },
    );
}

#[test]
fn c02_metric_invariance() {
    criterion(2, "model distances survive blow-ups", secs(30), || {
        let mut r = rng(2);
        for i in 0..200 {
            let vertices = r.gen_range(1..=10);
            let shape = Shape {
                vertices,
                extra: r.gen_range(0..=3),
                max_mult: 8,
                genus_chance: 0.2,
                max_genus: 2,
            };
            let g = random_graph(&mut r, shape);
            let (ops, after) = random_blow_ups(&mut r, &g, 50);
            let report = verify_metric_invariance(&g, &ops).map_err(|e| e.to_string())?;
            ensure(report.preserved, || {
                format!("graph {i}: {:?}", report.mismatches)
            })?;
            if i < 10 {
                let (d0, d1) = (floyd_warshall(&g), floyd_warshall(&after));
                for u in 0..vertices {
                    for v in 0..vertices {
                        ensure(d0[u][v] == d1[u][v], || {
                            format!("graph {i}: oracle distance {u}-{v}")
                        })?;
                    }
                }
            }
        }
        Ok(())
    });
}

#[test]
fn c03_laplacian_identity() {
    criterion(3, "laplacian of the weight function", secs(30), || {
        let mut r = rng(3);
        for m in 1..=3u64 {
            for i in 0..100 {
                let steps = r.gen_range(0..=12);
                let (g, data) = random_pair_model(&mut r, m, steps);
                let wt = weight_function(&g, &data).map_err(|e| e.to_string())?;
                for v in 0..g.num_vertices() {
                    let nu = data.nu[&g.vertex(v).id];
                    let want = q(nu, g.vertex(v).multiplicity as i64);
                    ensure(*wt.vertex_value(v) == want, || {
                        format!("m={m} #{i}: weight at {v}")
                    })?;
                }
                let full = laplacian_oracle(&g, &wt, true);
                ensure(full == canonical_oracle(&g, m as i64, true), || {
                    format!("m={m} #{i}: full identity fails: {full:?}")
                })?;
                let mut compact = canonical_oracle(&g, m as i64, false);
                for ray in g.rays() {
                    let c = -(ray.degree as i64) * data.rays[&ray.label].deg_div;
                    let slot = compact
                        .entry(GraphPoint::Vertex(ray.attach))
                        .or_insert_with(|| q(0, 1));
                    *slot = slot.clone() + q(c, 1);
                }
                compact.retain(|_, c| *c != q(0, 1));
                let found = laplacian_oracle(&g, &wt, false);
                ensure(found == compact, || {
                    format!("m={m} #{i}: compact identity fails")
                })?;
                let report = skeleta::weight::verify_laplacian_theorem(&g, &data)
                    .map_err(|e| e.to_string())?;
                ensure(report.holds(), || {
                    format!("m={m} #{i}: {:?}", report.discrepancies)
                })?;
            }
        }
        Ok(())
    });
}

fn random_degree_zero(r: &mut rand_chacha::ChaCha8Rng, g: &Graph) -> GraphDivisor<Q> {
    let mut d = GraphDivisor::zero();
    let mut total = 0;
    let k = r.gen_range(1..=6);
    let mut points = Vec::new();
    for _ in 0..k {
        let p = if g.num_edges() > 0 && r.gen_bool(0.5) {
            let e = r.gen_range(0..g.num_edges());
            g.edge_point(e, g.edges()[e].length.clone() * q(r.gen_range(1..=4), 5))
                .unwrap()
        } else {
            GraphPoint::Vertex(r.gen_range(0..g.num_vertices()))
        };
        points.push(p);
    }
    for p in &points[1..] {
        let c = r.gen_range(-3..=3);
        total += c;
        d.add_at(p.clone(), q(c, 1));
    }
    d.add_at(points[0].clone(), q(-total, 1));
    d
}

#[test]
fn c04_poisson_round_trip() {
    criterion(
        4,
        "poisson solutions reproduce the divisor",
        secs(30),
        || {
            let mut r = rng(4);
            for i in 0..100 {
                let shape = Shape {
                    vertices: r.gen_range(1..=8),
                    extra: r.gen_range(0..=4),
                    max_mult: 6,
                    genus_chance: 0.0,
                    max_genus: 0,
                };
                let g = random_graph(&mut r, shape);
                let d = random_degree_zero(&mut r, &g);
                let target = divisor_map(&d);
                let first = GraphPoint::Vertex(0);
                let second = if g.num_edges() > 0 {
                    let e = r.gen_range(0..g.num_edges());
                    g.edge_point(e, g.edges()[e].length.clone() * q(1, 3))
                        .unwrap()
                } else {
                    GraphPoint::Vertex(0)
                };
                let f1 = solve_poisson(&g, &d, &[], &first).map_err(|e| e.to_string())?;
                let f2 = solve_poisson(&g, &d, &[], &second).map_err(|e| e.to_string())?;
                for f in [&f1, &f2] {
                    ensure(laplacian_oracle(&g, f, true) == target, || {
                        format!("#{i}: laplacian differs")
                    })?;
                    ensure(divisor_map(&laplacian(&g, f).unwrap()) == target, || {
                        format!("#{i}: library laplacian")
                    })?;
                }
                ensure(f1.value_at(&g, &first).unwrap() == q(0, 1), || {
                    format!("#{i}: anchor value")
                })?;
                ensure(f2.value_at(&g, &second).unwrap() == q(0, 1), || {
                    format!("#{i}: anchor value")
                })?;
                let pts = samples(&g, 7);
                let gaps: BTreeSet<Q> = pts
                    .iter()
                    .map(|s| evaluate(&g, &f1, s.edge, &s.pos) - evaluate(&g, &f2, s.edge, &s.pos))
                    .chain([f1.vertex_value(0).clone() - f2.vertex_value(0).clone()])
                    .collect();
                ensure(gaps.len() == 1, || {
                    format!("#{i}: solutions differ by a non-constant")
                })?;
                let diff = f1.add(&g, &f2.scaled(&q(-1, 1))).unwrap().simplified(&g);
                ensure(diff.is_constant(), || {
                    format!("#{i}: library difference not constant")
                })?;
            }
            Ok(())
        },
    );
}

#[test]
fn c05_canonical_degree() {
    criterion(5, "deg K = 2g - 2", None, || {
        let mut graphs: Vec<Graph> = vec![fixtures::theta(), fixtures::path(1), fixtures::path(4)];
        graphs.extend((2..=6).map(fixtures::cycle));
        graphs.extend((1..=4).map(fixtures::dumbbell));
        let mut r = rng(5);
        for _ in 0..100 {
            let shape = Shape {
                vertices: r.gen_range(1..=9),
                extra: r.gen_range(0..=5),
                max_mult: 1,
                genus_chance: 0.3,
                max_genus: 3,
            };
            graphs.push(random_graph(&mut r, shape));
        }
        for (i, g) in graphs.iter().enumerate() {
            let deg = canonical_divisor(g, 1).map_err(|e| e.to_string())?.degree();
            let genus = genus_oracle(g);
            ensure(graph_genus(g).unwrap() as i64 == genus, || {
                format!("#{i}: graph genus")
            })?;
            ensure(deg == q(2 * (genus - 1), 1), || {
                format!("#{i}: degree {deg} for genus {genus}")
            })?;
        }
        Ok(())
    });
}

#[test]
fn c06_min_locus_of_cycle_witnesses() {
    criterion(
        6,
        "cycle witnesses have minimum locus Z(T, e)",
        secs(120),
        || {
            let mut r = rng(6);
            let mut pairs = 0;
            for i in 0..50 {
                let genus = r.gen_range(1..=4);
                let g = random_degenerate(&mut r, 5, genus);
                let pts = samples(&g, 16);
                for tree in all_spanning_trees(&g) {
                    for e in (0..g.num_edges()).filter(|e| !tree.contains(e)) {
                        pairs += 1;
                        let w = witness_cycle_with_tree(&g, &tree, e)
                            .map_err(|x| format!("#{i}: {x}"))?;
                        let cycle = cycle_by_exchange(&g, &tree, e);
                        let expected = Locus::from_edges(&g, cycle.iter().copied()).unwrap();
                        ensure(w.locus == expected, || {
                            format!("#{i}: locus {:?} for cycle {cycle:?}", w.locus)
                        })?;
                        let (min, at) = sampled_minimizers(&g, &w.function, &pts);
                        ensure(min == w.function.min_value(), || {
                            format!("#{i}: sampled minimum")
                        })?;
                        ensure(at == samples_on_edges(&g, &cycle, &pts), || {
                            format!("#{i}: sampled minimizers off the cycle for tree {tree:?}, edge {e}")
                        })?;
                    }
                }
            }
            ensure(pairs > 0, || "no pairs processed".into())
        },
    );
}

/// Two blocks joined by a path of `k` bridges. Blocks: `t` triangle, `h` theta,
/// `k4` complete graph on four vertices.
fn joined(left: &str, right: &str, k: usize) -> Graph {
    let mut b = WeightedDualGraph::builder(MetricKind::Model);
    let block = |b: &mut skeleta::graph::GraphBuilder<Q>, kind: &str, tag: &str| -> usize {
        match kind {
            "t" => {
                let vs: Vec<usize> = (0..3)
                    .map(|i| b.vertex(format!("{tag}{i}"), 1, 0).unwrap())
                    .collect();
                for i in 0..3 {
                    b.edge(vs[i], vs[(i + 1) % 3]).unwrap();
                }
                vs[0]
            }
            "h" => {
                let x = b.vertex(format!("{tag}x"), 1, 0).unwrap();
                let y = b.vertex(format!("{tag}y"), 1, 0).unwrap();
                for _ in 0..3 {
                    b.edge(x, y).unwrap();
                }
                x
            }
            _ => {
                let vs: Vec<usize> = (0..4)
                    .map(|i| b.vertex(format!("{tag}{i}"), 1, 0).unwrap())
                    .collect();
                for i in 0..4 {
                    for j in i + 1..4 {
                        b.edge(vs[i], vs[j]).unwrap();
                    }
                }
                vs[0]
            }
        }
    };
    let a = block(&mut b, left, "l");
    let z = block(&mut b, right, "r");
    let mut prev = a;
    for i in 1..k {
        let m = b.vertex(format!("p{i}"), 1, 0).unwrap();
        b.edge(prev, m).unwrap();
        prev = m;
    }
    b.edge(prev, z).unwrap();
    b.build().unwrap()
}

/// Three triangles in a row, joined by single bridges.
fn triangle_chain() -> Graph {
    let mut b = WeightedDualGraph::builder(MetricKind::Model);
    let mut anchors = Vec::new();
    for t in 0..3 {
        let vs: Vec<usize> = (0..3)
            .map(|i| b.vertex(format!("t{t}{i}"), 1, 0).unwrap())
            .collect();
        for i in 0..3 {
            b.edge(vs[i], vs[(i + 1) % 3]).unwrap();
        }
        anchors.push((vs[1], vs[2]));
    }
    b.edge(anchors[0].1, anchors[1].1).unwrap();
    b.edge(anchors[1].0, anchors[2].0).unwrap();
    b.build().unwrap()
}

#[test]
fn c07_bridge_chain_witnesses() {
    criterion(
        7,
        "bridge witnesses have minimum locus the chain",
        secs(60),
        || {
            let mut graphs: Vec<Graph> = (1..=3).map(fixtures::dumbbell).collect();
            graphs.extend([
                joined("t", "h", 1),
                joined("t", "h", 2),
                joined("h", "h", 1),
                joined("t", "k4", 2),
                triangle_chain(),
            ]);
            for (i, g) in graphs.iter().enumerate() {
                let genus = genus_oracle(g);
                ensure((2..=4).contains(&genus), || format!("#{i}: genus {genus}"))?;
                let bridges = bridges_by_deletion(g);
                let chains = maximal_bridge_chains(g);
                let covered: BTreeSet<usize> = chains
                    .iter()
                    .flat_map(|c| c.edges.iter().copied())
                    .collect();
                ensure(covered == bridges, || format!("#{i}: chains miss bridges"))?;
                for chain in chains {
                    let w =
                        witness_bridge_chain(g, &chain.edges).map_err(|x| format!("#{i}: {x}"))?;
                    let expected = Locus::from_edges(g, chain.edges.iter().copied()).unwrap();
                    ensure(w.locus == expected, || {
                        format!("#{i}: locus {:?} for chain {:?}", w.locus, chain.edges)
                    })?;
                    let pts = samples(g, 16);
                    let (_, at) = sampled_minimizers(g, &w.function, &pts);
                    let on: BTreeSet<usize> = chain.edges.iter().copied().collect();
                    ensure(at == samples_on_edges(g, &on, &pts), || {
                        format!("#{i}: sampled minimizers")
                    })?;
                }
            }
            Ok(())
        },
    );
}

#[test]
fn c08_non_bridge_union() {
    criterion(
        8,
        "witness union equals the canonical form locus",
        None,
        || {
            let mut r = rng(8);
            for i in 0..50 {
                let g = random_semistable(&mut r);
                let bridges = bridges_by_deletion(&g);
                let mut expected =
                    Locus::from_vertices((0..g.num_vertices()).filter(|&v| g.vertex(v).genus > 0));
                for e in (0..g.num_edges()).filter(|e| !bridges.contains(e)) {
                    expected.insert_edge(&g, e).unwrap();
                }
                let union = witness_union_locus(&g).map_err(|x| format!("#{i}: {x}"))?;
                let canonical = canonical_form_locus(&g).map_err(|x| format!("#{i}: {x}"))?;
                ensure(canonical == expected, || {
                    format!("#{i}: canonical form locus {canonical:?}")
                })?;
                ensure(union == expected, || {
                    format!("#{i}: witness union {union:?}")
                })?;
            }
            Ok(())
        },
    );
}

#[test]
fn c09_in_star_contraction() {
    criterion(9, "I_n* contracts to its double chain", None, || {
        for n in 1..=5 {
            let sk = combinatorial_skeleton(&fixtures::kodaira_in_star::<Q>(n))
                .map_err(|e| e.to_string())?;
            let ids: Vec<String> = sk.vertices().iter().map(|v| v.id.clone()).collect();
            let want: Vec<String> = (0..=n).map(|i| format!("c{i}")).collect();
            ensure(ids == want, || format!("n={n}: vertices {ids:?}"))?;
            ensure(
                sk.vertices()
                    .iter()
                    .all(|v| v.multiplicity == 2 && v.genus == 0),
                || format!("n={n}: labels"),
            )?;
            let edges: BTreeSet<(usize, usize)> = sk
                .edges()
                .iter()
                .map(|e| (e.a.min(e.b), e.a.max(e.b)))
                .collect();
            let chain: BTreeSet<(usize, usize)> = (0..n).map(|i| (i, i + 1)).collect();
            ensure(sk.num_edges() == n && edges == chain, || {
                format!("n={n}: edges {edges:?}")
            })?;
        }
        Ok(())
    });
}

#[test]
fn c10_stable_gap() {
    criterion(10, "stable edge length is the smallest gap", None, || {
        for n1 in 1..=12i64 {
            for n2 in 1..=12i64 {
                let bound = n1 * n2;
                let mut best = i64::MAX;
                for a in -bound..=bound {
                    for b in -bound..=bound {
                        let num = (a * n2 - b * n1).abs();
                        if num > 0 && num < best {
                            best = num;
                        }
                    }
                }
                let brute = q(best, n1 * n2);
                let lcm = q(1, n1.lcm(&n2));
                ensure(brute == lcm, || {
                    format!("{n1},{n2}: brute {brute} vs 1/lcm {lcm}")
                })?;
                ensure(stable_gap::<Q>(n1 as u64, n2 as u64) == brute, || {
                    format!("{n1},{n2}: stable_gap")
                })?;
                let mut b = WeightedDualGraph::builder(MetricKind::Stable);
                let x = b.vertex("x", n1 as u64, 0).unwrap();
                let y = b.vertex("y", n2 as u64, 0).unwrap();
                b.edge(x, y).unwrap();
                let g: Graph = b.build().unwrap();
                ensure(g.edges()[0].length == brute, || {
                    format!("{n1},{n2}: stable edge length")
                })?;
                let l = edge_length(&g, 0, MetricKind::Stable).unwrap();
                ensure(l == brute, || format!("{n1},{n2}: edge_length"))?;
                ensure(
                    g.edge(0).unwrap().length.to_canonical() == brute.to_canonical(),
                    || "canonical text".into(),
                )?;
            }
        }
        Ok(())
    });
}
