use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const SIX_NODE: &str = "# nodes=6\n1\t5\t1\n2\t4\t1\n4\t5\t1\n5\t3\t1\n6\t1\t1\n";

fn qhrank(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qhrank"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn body_nodes(report: &str) -> Vec<String> {
    report
        .lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split('\t').next().unwrap().to_string())
        .collect()
}

#[test]
fn rank_six_node_puts_node5_first() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("six.tsv");
    fs::write(&g, SIX_NODE).unwrap();

    let hits = qhrank(&["rank", p(&g), "--algo", "hits"]);
    assert_eq!(hits.status.code(), Some(0), "{}", stderr(&hits));
    let text = stdout(&hits);
    assert!(text.contains("# algorithm=hits\n"));
    assert!(text.contains("# key=auth\n"));
    assert!(text.contains("node\tauth\thub\tf\trank\n"));
    assert_eq!(body_nodes(&text)[0], "5");
    let first = text.lines().find(|l| l.starts_with("5\t")).unwrap();
    assert_eq!(first, "5\t1.000000\t0.000000\t0.000000\t1");

    let whits = qhrank(&["rank", p(&g), "--algo", "whits", "--alpha", "0.6667"]);
    assert_eq!(body_nodes(&stdout(&whits)), body_nodes(&text));
}

#[test]
fn rank_pagerank_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("six.tsv");
    let out = dir.path().join("pr.tsv");
    fs::write(&g, SIX_NODE).unwrap();
    let o = qhrank(&["rank", p(&g), "--algo", "pagerank", "--damping", "0.85", "--out", p(&out)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.contains("node\tpr\trank\n"));
    assert!(text.contains("# damping=0.85\n"));
    assert_eq!(body_nodes(&text).len(), 6);

    let full = qhrank(&["rank", p(&g), "--algo", "pagerank", "--precision", "full"]);
    assert!(stdout(&full).lines().any(|l| l.split('\t').nth(1).is_some_and(|s| s.len() > 8)));
}

#[test]
fn rank_errors() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("six.tsv");
    fs::write(&g, SIX_NODE).unwrap();

    let missing = qhrank(&["rank", "missing.tsv"]);
    assert_eq!(missing.status.code(), Some(1));
    assert!(stderr(&missing).contains("missing.tsv"));

    let contradictory = qhrank(&["rank", p(&g), "--algo", "pagerank", "--alpha", "2/3"]);
    assert_eq!(contradictory.status.code(), Some(2));
    assert!(contradictory.stdout.is_empty());

    let unknown = qhrank(&["rank", p(&g), "--algo", "salsa"]);
    assert_eq!(unknown.status.code(), Some(2));

    let bad = dir.path().join("bad.tsv");
    fs::write(&bad, "1,2,3\n").unwrap();
    let parse = qhrank(&["rank", p(&bad)]);
    assert_eq!(parse.status.code(), Some(1));
    assert!(stderr(&parse).contains("line 1"), "{}", stderr(&parse));
}

#[test]
fn non_convergence_warns_but_succeeds() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("w.tsv");
    fs::write(&g, "1\t2\t3\n2\t3\t1\n3\t1\t2\n1\t3\t5\n").unwrap();
    let o = qhrank(&["rank", p(&g), "--max-iter", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("warning"));
    assert!(stdout(&o).contains("# converged=false\n"));
}

#[test]
fn compare_examples() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.tsv");
    fs::write(
        &report,
        "# algorithm=hits\nnode\tauth\thub\tf\trank\n2\t0.4\t0.1\t0.16\t1\n1\t0.3\t0.2\t0.24\t2\n3\t0.2\t0.3\t0.24\t3\n4\t0.1\t0.4\t0.16\t4\n",
    )
    .unwrap();
    let cases = [
        ("2\n1\n3\n4\n", "kendall_tau\t1.000000\n"),
        ("4\n3\n1\n2\n", "kendall_tau\t-1.000000\n"),
        // single adjacent swap over 4 nodes: (5 - 1) / 6
        ("1\n2\n3\n4\n", "kendall_tau\t0.666667\n"),
    ];
    for (reference, want) in cases {
        let r = dir.path().join("ref.txt");
        fs::write(&r, reference).unwrap();
        let o = qhrank(&["compare", p(&report), p(&r), "--k", "2"]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        assert!(stdout(&o).contains(want), "{}", stdout(&o));
    }
    let r = dir.path().join("ref.txt");
    fs::write(&r, "1\n2\n3\n4\n").unwrap();
    let o = stdout(&qhrank(&["compare", p(&report), p(&r), "--k", "2"]));
    assert_eq!(
        o,
        "n\t4\nkendall_tau\t0.666667\nexact_matches\t2\ntop_2_overlap\t1.000000\n"
    );

    fs::write(&r, "1\n2\n2\n3\n4\n").unwrap();
    let dup = qhrank(&["compare", p(&report), p(&r)]);
    assert_eq!(dup.status.code(), Some(1));
    assert!(stderr(&dup).contains("'2'"));

    fs::write(&r, "1\n2\n").unwrap();
    let partial = qhrank(&["compare", p(&report), p(&r)]);
    assert_eq!(partial.status.code(), Some(1));
    assert!(stderr(&partial).contains("3, 4"));
}

#[test]
fn generate_examples() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.tsv");
    let b = dir.path().join("b.tsv");
    let truth = dir.path().join("truth.tsv");
    let args = |out: &Path| {
        vec![
            "generate".to_string(),
            "--depth".into(),
            "2".into(),
            "--branching".into(),
            "2".into(),
            "--extra".into(),
            "0".into(),
            "--seed".into(),
            "7".into(),
            "--out-graph".into(),
            p(out).into(),
            "--out-truth".into(),
            p(&truth).into(),
        ]
    };
    let run = |v: Vec<String>| {
        Command::new(env!("CARGO_BIN_EXE_qhrank"))
            .args(v)
            .output()
            .unwrap()
    };
    assert_eq!(run(args(&a)).status.code(), Some(0));
    assert_eq!(run(args(&b)).status.code(), Some(0));
    let ga = fs::read(&a).unwrap();
    assert_eq!(ga, fs::read(&b).unwrap());
    let text = String::from_utf8(ga).unwrap();
    assert!(text.contains("# nodes=7\n"));
    assert!(text.contains("down=[5,10] up=[1,4] extra=[1,2]"));
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 12);
    let t = fs::read_to_string(&truth).unwrap();
    assert!(t.starts_with("node\tlevel\tparent\n1\t0\t-\n2\t1\t1\n"));

    let o = qhrank(&["generate", "--depth", "1", "--branching", "3", "--extra", "1", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().filter(|l| !l.starts_with('#')).count(), 7);
    assert!(stderr(&o).contains("warning"));

    let neg = qhrank(&["generate", "--depth", "1", "--branching", "3", "--extra", "-1"]);
    assert_eq!(neg.status.code(), Some(2));
    let overlap = qhrank(&["generate", "--depth", "1", "--branching", "3", "--up", "1,6"]);
    assert_eq!(overlap.status.code(), Some(2));
}

#[test]
fn sweep_examples() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.tsv");
    let r = dir.path().join("ref.txt");
    let gen = qhrank(&[
        "generate", "--depth", "2", "--branching", "3", "--extra", "2", "--seed", "3",
        "--out-graph", p(&g), "--out-reference", p(&r),
    ]);
    assert_eq!(gen.status.code(), Some(0));

    let o = qhrank(&["sweep", p(&g), p(&r), "--alphas", "1,2/3,0.4,2/3", "--k", "3,5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stderr(&o).contains("duplicate alpha '2/3'"));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(
        lines[0],
        "alpha\tkendall_tau\texact_matches\ttop_3_overlap\ttop_5_overlap\titerations\tconverged"
    );
    let alphas: Vec<&str> = lines[1..].iter().map(|l| l.split('\t').next().unwrap()).collect();
    assert_eq!(alphas, vec!["1", "2/3", "0.4"]);
    assert!(lines[1..].iter().all(|l| l.split('\t').count() == 7));

    let empty = qhrank(&["sweep", p(&g), p(&r), "--alphas", ""]);
    assert_eq!(empty.status.code(), Some(2));
}

#[test]
fn sweep_alpha_one_matches_basic_hits_on_unit_weights() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("u.tsv");
    let r = dir.path().join("ref.txt");
    let report = dir.path().join("rep.tsv");
    fs::write(&g, "1\t2\t1\n2\t3\t1\n3\t1\t1\n1\t3\t1\n4\t1\t1\n2\t4\t1\n").unwrap();
    fs::write(&r, "1\n2\n3\n4\n").unwrap();
    let basic = qhrank(&["rank", p(&g), "--algo", "hits", "--key", "f", "--out", p(&report)]);
    assert_eq!(basic.status.code(), Some(0));
    let cmp = stdout(&qhrank(&["compare", p(&report), p(&r), "--k", "2"]));
    let sweep = stdout(&qhrank(&["sweep", p(&g), p(&r), "--alphas", "1", "--k", "2"]));
    let row: Vec<&str> = sweep.lines().last().unwrap().split('\t').collect();
    assert!(cmp.contains(&format!("kendall_tau\t{}\n", row[1])));
    assert!(cmp.contains(&format!("exact_matches\t{}\n", row[2])));
    assert!(cmp.contains(&format!("top_2_overlap\t{}\n", row[3])));
}
