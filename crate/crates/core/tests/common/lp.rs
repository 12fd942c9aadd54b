use std::collections::BTreeSet;

/// What a minimal CPLEX-LP reader recovers from a model file.
#[derive(Debug, Default)]
pub struct LpSummary {
    pub rows: Vec<String>,
    pub variables: BTreeSet<String>,
    pub binaries: BTreeSet<String>,
    pub objective_terms: usize,
}

fn is_name(tok: &str) -> bool {
    tok.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
        && tok.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Parses the subset of LP emitted by the exporters, panicking on anything else.
pub fn parse_lp(text: &str) -> LpSummary {
    let mut out = LpSummary::default();
    let mut lines = text.lines().peekable();
    assert!(
        lines.next().unwrap().starts_with('\\'),
        "first line is a comment"
    );
    // Join continuation lines onto their statement.
    let mut stmts: Vec<String> = Vec::new();
    for l in lines {
        if l.starts_with("   ") {
            stmts
                .last_mut()
                .expect("continuation after a statement")
                .push_str(l);
        } else {
            stmts.push(l.to_string());
        }
    }
    let mut section = "";
    for s in &stmts {
        match s.trim() {
            "Minimize" | "Subject To" | "Bounds" | "Binaries" | "End" => {
                section = s.trim_start();
                continue;
            }
            _ => {}
        }
        let toks: Vec<&str> = s.split_whitespace().collect();
        match section {
            "Minimize" | "Subject To" => {
                let label = toks[0].strip_suffix(':').expect("labelled row");
                assert!(is_name(label), "{label}");
                let body = &toks[1..];
                let rel = body.iter().position(|t| ["=", "<=", ">="].contains(t));
                let lhs = match (section, rel) {
                    ("Minimize", None) => body,
                    ("Subject To", Some(r)) => {
                        assert_eq!(r + 2, body.len(), "single rhs in {label}");
                        body[r + 1].parse::<i64>().expect("integer rhs");
                        &body[..r]
                    }
                    _ => panic!("malformed {label}"),
                };
                // coefficient? name, separated by signs
                let mut terms = 0;
                let mut expect_sign = false;
                for t in lhs {
                    if *t == "+" || *t == "-" {
                        assert!(expect_sign, "sign out of place in {label}");
                        expect_sign = false;
                    } else if is_name(t) {
                        out.variables.insert(t.to_string());
                        terms += 1;
                        expect_sign = true;
                    } else {
                        t.parse::<i64>().expect("integer coefficient");
                    }
                }
                if section == "Minimize" {
                    out.objective_terms = terms;
                } else {
                    out.rows.push(label.to_string());
                }
            }
            "Bounds" => {
                assert_eq!(toks.len(), 3, "{s}");
                assert!(is_name(toks[0]) && ["=", ">="].contains(&toks[1]));
                out.variables.insert(toks[0].to_string());
            }
            "Binaries" => {
                for t in toks {
                    assert!(is_name(t));
                    out.binaries.insert(t.to_string());
                    out.variables.insert(t.to_string());
                }
            }
            "End" => panic!("text after End"),
            _ => panic!("statement outside a section: {s:?}"),
        }
    }
    assert_eq!(section, "End");
    out
}
