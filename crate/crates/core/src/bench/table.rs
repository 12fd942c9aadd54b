use super::stats::RunStats;

const HEADER: [&str; 8] = [
    "Instance",
    "Algorithm",
    "Runs",
    "Ref",
    "Best",
    "Gap_best",
    "Gap_avg",
    "t(s)",
];

/// Table cells of one row; text and CSV both render from these.
fn cells(s: &RunStats) -> [String; 8] {
    let gap_best = match s.gap_best {
        Some(g) if g.is_zero() => format!("=({})", s.hits),
        Some(g) => g.to_string(),
        None => "-".into(),
    };
    [
        s.instance.clone(),
        s.algorithm.clone(),
        s.runs.len().to_string(),
        s.reference.map_or("-".into(), |r| r.to_string()),
        s.best().to_string(),
        gap_best,
        s.gap_avg.map_or("-".into(), |g| g.to_string()),
        format!("{:.1}", s.mean_seconds()),
    ]
}

fn sorted(stats: &[RunStats]) -> Vec<&RunStats> {
    let mut v: Vec<&RunStats> = stats.iter().collect();
    v.sort_by(|a, b| (&a.instance, &a.algorithm).cmp(&(&b.instance, &b.algorithm)));
    v
}

/// Aligned text table ordered by instance, then algorithm.
pub fn render_table(stats: &[RunStats]) -> String {
    let rows: Vec<[String; 8]> = sorted(stats).into_iter().map(cells).collect();
    let mut width = HEADER.map(str::len);
    for r in &rows {
        for (w, c) in width.iter_mut().zip(r) {
            *w = (*w).max(c.len());
        }
    }
    let line = |r: &[String]| {
        let mut s = String::new();
        for (i, (c, w)) in r.iter().zip(width).enumerate() {
            if i > 0 {
                s.push_str("  ");
            }
            if i < 2 {
                s.push_str(&format!("{c:<w$}"));
            } else {
                s.push_str(&format!("{c:>w$}"));
            }
        }
        s.trim_end().to_string() + "\n"
    };
    let mut out = line(&HEADER.map(String::from));
    for r in &rows {
        out.push_str(&line(r));
    }
    out
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// The same table as comma-separated values.
pub fn render_csv(stats: &[RunStats]) -> String {
    let mut out = HEADER.join(",") + "\n";
    for s in sorted(stats) {
        let row: Vec<String> = cells(s).iter().map(|c| csv_field(c)).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::stats::Run;

    fn stats(name: &str, costs: &[i64], reference: i64) -> RunStats {
        let runs = costs
            .iter()
            .map(|&c| Run {
                seed: 0,
                cost: c,
                seconds: 1.26,
                feasible: true,
            })
            .collect();
        RunStats::new(name, "GA-EAX", runs, Some(reference)).unwrap()
    }

    #[test]
    fn hit_notation() {
        let t = render_table(&[stats("a", &[50; 10], 50)]);
        assert!(t.contains("=(10)"));
        assert!(t.contains("0.0000"));
        assert!(t.contains("1.3"));
    }

    #[test]
    fn empty_is_header_only() {
        assert_eq!(render_table(&[]).lines().count(), 1);
        assert_eq!(render_csv(&[]), HEADER.join(",") + "\n");
    }

    #[test]
    fn ordered_by_instance() {
        let t = render_csv(&[stats("b", &[2], 1), stats("a", &[1], 1)]);
        let names: Vec<&str> = t
            .lines()
            .skip(1)
            .map(|l| l.split(',').next().unwrap())
            .collect();
        assert_eq!(names, ["a", "b"]);
    }
}
