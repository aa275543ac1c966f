//! What each subcommand prints, in both formats.

use std::fmt::Write;

use sctree::cc::{CcResult, Mode};
use sctree::majority::{DomainReport, MajorityRelation, MarginMatrix};
use sctree::oracle::Exhaustive;
use sctree::sctree::{
    collapsible_edges, hereditary_check, CutKind, CutTable, Hereditary, NoCutWitness, NotSingleCrossing,
    RecognitionResult, Unanimous,
};
use sctree::{Profile, Tree};
use serde::Serialize;
use serde_json::{json, Value};

pub struct Report {
    /// Exit status 0 if set, 1 otherwise.
    pub positive: bool,
    pub json: String,
    pub text: String,
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("report values serialise")
}

fn edges_text(t: &Tree) -> String {
    if t.edges().is_empty() {
        return "(single vertex)".into();
    }
    t.edges()
        .iter()
        .map(|(u, v)| format!("{u}-{v}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn cut_lines(p: &Profile, ct: &CutTable, out: &mut String) {
    for c in ct.cuts() {
        let (a, b) = (p.candidate_name(c.a), p.candidate_name(c.b));
        let _ = match &c.kind {
            CutKind::Edge { u, v } => writeln!(out, "  {a} {b}: edge {u}-{v}"),
            CutKind::Virtual(Unanimous::A) => writeln!(out, "  {a} {b}: virtual, all prefer {a}"),
            CutKind::Virtual(Unanimous::B) => writeln!(out, "  {a} {b}: virtual, all prefer {b}"),
        };
    }
}

impl Report {
    pub fn verified(p: &Profile, t: &Tree, ct: &CutTable) -> Report {
        let collapsible = collapsible_edges(t, ct);
        let pairs: Vec<[usize; 2]> = collapsible.iter().map(|&(u, v)| [u, v]).collect();
        let json = json!({
            "single_crossing": true,
            "minimal": collapsible.is_empty(),
            "collapsible_edges": pairs,
            "cut_table": serde_json::to_value(ct.named(p)).expect("serialisable"),
        });
        let mut text = String::from("single-crossing on the given tree\n");
        cut_lines(p, ct, &mut text);
        if collapsible.is_empty() {
            text.push_str("minimal: no collapsible edge\n");
        } else {
            let list: Vec<String> = collapsible.iter().map(|(u, v)| format!("{u}-{v}")).collect();
            let _ = writeln!(text, "collapsible edges: {}", list.join(" "));
        }
        Report {
            positive: true,
            json: to_json(&json),
            text,
        }
    }

    pub fn no_cut(p: &Profile, w: &NoCutWitness) -> Report {
        let (a, b) = (p.candidate_name(w.a), p.candidate_name(w.b));
        let (pref, other) = match w.side {
            Unanimous::A => (a, b),
            Unanimous::B => (b, a),
        };
        let json = json!({
            "single_crossing": false,
            "witness": {
                "a": a,
                "b": b,
                "disconnected_side": pref,
                "voters": [w.vertices.0, w.vertices.1],
            },
        });
        let text = format!(
            "not single-crossing on the given tree: pair {a} {b} has no cut; voters {} and {} prefer {pref} to {other} \
             but are separated by voters who do not\n",
            w.vertices.0, w.vertices.1
        );
        Report {
            positive: false,
            json: to_json(&json),
            text,
        }
    }

    pub fn recognized(p: &Profile, r: &RecognitionResult) -> Report {
        let mut text = String::from("single-crossing\n");
        let _ = writeln!(text, "minimal tree: {}", edges_text(&r.full_tree));
        if r.reduced.len() < p.n() {
            let _ = writeln!(
                text,
                "reduced tree on {} classes: {}",
                r.reduced.len(),
                edges_text(&r.reduced_tree)
            );
            for c in 1..=r.reduced.len() {
                let _ = writeln!(text, "  class {c}: voters {:?}", r.reduced.members(c));
            }
        }
        text.push_str("cuts:\n");
        cut_lines(p, &r.cut_table, &mut text);
        let _ = match hereditary_check(r) {
            Hereditary::Line(order) => writeln!(text, "every subprofile is single-crossing; voter line {order:?}"),
            Hereditary::NonLineWitness { centre, voters } => writeln!(
                text,
                "not hereditary: voters {voters:?} around voter {centre} form a subprofile that is not single-crossing"
            ),
        };
        Report {
            positive: true,
            json: to_json(&r.named(p)),
            text,
        }
    }

    pub fn not_single_crossing(e: &NotSingleCrossing) -> Report {
        let json = json!({
            "single_crossing": false,
            "stuck_classes": e.stuck_classes,
            "stuck_voters": e.stuck_voters,
        });
        let text = format!(
            "not single-crossing: no voter among {:?} can be a leaf of a tree on the remaining voters\n",
            e.stuck_voters
        );
        Report {
            positive: false,
            json: to_json(&json),
            text,
        }
    }

    pub fn generated(p: &Profile) -> Report {
        Report {
            positive: true,
            json: to_json(p),
            text: p.to_text(),
        }
    }

    pub fn majority(
        p: &Profile,
        margins: &MarginMatrix,
        relation: &MajorityRelation,
        representative: Result<Option<usize>, u64>,
    ) -> Report {
        let m = p.m();
        let name = |c: usize| p.candidate_name(c);
        let beats: Vec<[&str; 2]> = (0..m)
            .flat_map(|a| (0..m).map(move |b| (a, b)))
            .filter(|&(a, b)| relation.beats(a, b))
            .map(|(a, b)| [name(a), name(b)])
            .collect();
        let violation = relation.violation().map(|v| v.map(name));
        let rows: Vec<&[i64]> = margins.rows().collect();
        let rep_json: Value = match representative {
            Ok(Some(v)) => json!({"status": "found", "voter": v}),
            Ok(None) => json!({"status": "not_found"}),
            Err(_) => json!({"status": "even_electorate"}),
        };
        let json = json!({
            "candidates": p.candidates(),
            "electorate": p.total_weight(),
            "margins": rows,
            "beats": beats,
            "transitive": relation.is_transitive(),
            "violation": violation,
            "representative": rep_json,
        });

        let width = p.candidates().iter().map(|c| c.len()).max().unwrap_or(1).max(3);
        let mut text = String::from("margins (row over column):\n");
        let _ = write!(text, "{:width$}", "");
        for c in p.candidates() {
            let _ = write!(text, " {c:>width$}");
        }
        text.push('\n');
        for (a, row) in rows.iter().enumerate() {
            let _ = write!(text, "{:width$}", name(a));
            for x in row.iter() {
                let _ = write!(text, " {x:>width$}");
            }
            text.push('\n');
        }
        match violation {
            None => text.push_str("strict majority relation is transitive\n"),
            Some([a, b, c]) => {
                let _ = writeln!(
                    text,
                    "intransitive: {a} beats {b}, {b} beats {c}, but {a} does not beat {c}"
                );
            }
        }
        let _ = match representative {
            Ok(Some(v)) => writeln!(
                text,
                "representative voter: {v} ({})",
                p.ranking_names(p.voter(v)).join(" ")
            ),
            Ok(None) => writeln!(text, "no voter's ranking equals the strict majority relation"),
            Err(w) => writeln!(
                text,
                "electorate of weight {w} is even; no representative voter is defined"
            ),
        };
        let positive = relation.is_transitive() && representative != Ok(None);
        Report {
            positive,
            json: to_json(&json),
            text,
        }
    }

    pub fn committee(p: &Profile, res: &CcResult) -> Report {
        let named = res.named(p);
        let rule = match res.mode {
            Mode::Utilitarian => "utilitarian",
            Mode::Egalitarian => "egalitarian",
        };
        let mut text = format!("k = {}, {rule}, phi = {}\n", res.k, res.phi);
        let _ = writeln!(text, "committee: {}", named.committee.join(" "));
        for (v, c) in named.assignment.0.iter().enumerate() {
            let _ = writeln!(text, "  voter {} -> {c}", v + 1);
        }
        Report {
            positive: true,
            json: to_json(&named),
            text,
        }
    }

    pub fn domain(p: &Profile, classes: usize, report: &DomainReport) -> Report {
        let counterexample = report.counterexample.as_ref().map(|c| {
            json!({
                "weights": c.weights,
                "cycle": c.cycle.map(|x| p.candidate_name(x)),
            })
        });
        let json = json!({
            "classes": classes,
            "trials": report.trials,
            "failures": report.failures,
            "counterexample": counterexample,
        });
        let mut text = format!(
            "{} of {} sampled weightings over {classes} distinct orders gave an intransitive majority\n",
            report.failures, report.trials
        );
        if let Some(c) = &report.counterexample {
            let [a, b, d] = c.cycle.map(|x| p.candidate_name(x));
            let _ = writeln!(
                text,
                "first: weights {:?}: {a} beats {b}, {b} beats {d}, {a} does not beat {d}",
                c.weights
            );
        }
        Report {
            positive: report.failures == 0,
            json: to_json(&json),
            text,
        }
    }

    pub fn trees(trees: Vec<Tree>) -> Report {
        let text = trees.iter().map(|t| format!("{}\n", edges_text(t))).collect();
        Report {
            positive: true,
            json: to_json(&trees),
            text,
        }
    }

    pub fn exhaustive(ex: &Exhaustive) -> Report {
        let json = json!({
            "single_crossing": ex.single_crossing(),
            "trees": ex.trees,
            "minimal": ex.minimal,
        });
        let mut text = format!(
            "{} trees on the distinct orders witness single-crossedness\n",
            ex.trees.len()
        );
        for t in &ex.minimal {
            let _ = writeln!(text, "minimal: {}", edges_text(t));
        }
        Report {
            positive: ex.single_crossing(),
            json: to_json(&json),
            text,
        }
    }

    pub fn classical(line: Option<Vec<usize>>) -> Report {
        let text = match &line {
            Some(order) => format!("single-crossing along the voter line {order:?}\n"),
            None => "not single-crossing along any line\n".into(),
        };
        Report {
            positive: line.is_some(),
            json: to_json(&json!({ "line": line })),
            text,
        }
    }
}
