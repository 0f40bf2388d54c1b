use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

const SPEC: &str = "The customer enters a card and a personal code.
SimpleMat checks the personal code.
If the personal code is valid then SimpleMat accepts the card.
If the personal code is not valid then SimpleMat rejects the card.
";

fn cewb(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_cewb"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn batch_with_emitted_clauses() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(
        dir.path(),
        "spec.txt",
        "The customer enters a card and a numeric personal code. If it is not valid then SM rejects the card.",
    );
    let o = cewb(&["--batch", &spec, "--emit", "clauses"], "");
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 8);
    assert!(text.ends_with("fact(named(3, simplemat)).\nfact((reject(3, 1):- neg(valid(2)))).\n"), "{text}");
    let report = String::from_utf8(o.stderr).unwrap();
    assert!(report.contains("the customer enters a card and [the customer enters] a numeric personal code.\n"));

    let report_path = dir.path().join("report.txt");
    let o = cewb(&["--batch", &spec, "--emit", "drs", "--report", &report_path.display().to_string()], "");
    assert!(stdout(&o).starts_with("[A, B, C, D]\n"));
    let report = std::fs::read_to_string(&report_path).unwrap();
    assert!(report.contains("if [the personal code] is not valid then [simplemat] rejects the [card].\n"));

    let o = cewb(&["--batch", &spec], "");
    assert!(stdout(&o).starts_with("> The customer enters"));
}

#[test]
fn empty_batch_file() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(dir.path(), "empty.txt", "");
    let o = cewb(&["--batch", &spec, "--emit", "clauses"], "");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "");
}

#[test]
fn exit_codes_by_error_kind() {
    let dir = tempfile::tempdir().unwrap();
    for (text, code) in [
        ("The customer enters a flurb.", 1),
        ("SM can check a card.", 1),
        ("It enters a card.", 2),
        ("The customer enters a card or a code.", 3),
    ] {
        let spec = write(dir.path(), "spec.txt", text);
        let o = cewb(&["--batch", &spec], "");
        assert_eq!(o.status.code(), Some(code), "{text}");
    }
}

#[test]
fn ask_and_show() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(dir.path(), "spec.txt", SPEC);
    let o = cewb(&["ask", "Does SimpleMat reject the card?", "--batch", &spec], "");
    assert_eq!(stdout(&o), "Answer: yes\n");
    let o = cewb(&["ask", "Who enters a card?", "--batch", &spec], "");
    assert_eq!(stdout(&o), "Answer: [a customer] enters a card.\n");
    let o = cewb(&["show", "drs", "--batch", &spec], "");
    assert!(stdout(&o).starts_with("[A, B, C, D]\n"), "{}", stdout(&o));
    let o = cewb(&["show", "paraphrase", "--batch", &spec], "");
    assert_eq!(stdout(&o).lines().count(), 4);
}

#[test]
fn execute_with_definitions_and_stdin() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(dir.path(), "spec.txt", SPEC);
    let defs = write(dir.path(), "defs.txt", "john is a customer\nbank_card is a card\n1234 is a personal_code\ns1 is a simplemat\n1234 is not valid\n");
    let o = cewb(&["execute", "--batch", &spec, "--defs", &defs], "");
    assert_eq!(
        stdout(&o),
        "user: john is a customer\nuser: bank_card is a card\nevent: john enters the bank_card\n\
         user: 1234 is a personal_code\nevent: john enters 1234\nuser: s1 is a simplemat\n\
         event: s1 checks 1234\nuser: 1234 is not valid\nevent: s1 rejects the bank_card\n"
    );
    let o = cewb(
        &["execute", "--batch", &spec],
        "john is a customer\nbank_card is a card\n1234 is a personal_code\ns1 is a simplemat\n1234 is valid\n",
    );
    assert!(stdout(&o).ends_with("event: s1 accepts the bank_card\n"), "{}", stdout(&o));
    let bad = write(dir.path(), "bad.txt", "john is customer\n");
    let o = cewb(&["execute", "--batch", &spec, "--defs", &bad], "");
    assert_ne!(o.status.code(), Some(0));
    assert!(String::from_utf8(o.stderr).unwrap().contains("line 1"));
}

#[test]
fn session_file_and_lexicon_edits() {
    let dir = tempfile::tempdir().unwrap();
    let session = dir.path().join("spec.session").display().to_string();
    let o = cewb(&["lex", "add", "noun|ticket|count,neut|sg=ticket,pl=tickets||", "--session", &session], "");
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let o = cewb(&["--session", &session], "The customer enters a ticket.\ny\n:quit\n");
    assert!(stdout(&o).contains("accepted"));
    let saved = std::fs::read_to_string(&session).unwrap();
    assert_eq!(saved, "lex: noun|ticket|count,neut|sg=ticket,pl=tickets||\nsentence: The customer enters a ticket.\n");
    let o = cewb(&["show", "clauses", "--session", &session], "");
    assert_eq!(stdout(&o), "fact(customer(0)).\nfact(ticket(1)).\nfact(enter(0, 1)).\n");
    let o = cewb(&["lex", "list", "--session", &session], "");
    assert!(stdout(&o).contains("noun|ticket|"));

    let lexfile = write(dir.path(), "words.lex", "noun|cat|count,neut|sg=cat,pl=cats||\n");
    let o = cewb(&["lex", "rm", "cat", "--lexicon", &lexfile], "");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&lexfile).unwrap(), "");
    let o = cewb(&["lex", "add", "verb|can||", "--lexicon", &lexfile], "");
    assert_ne!(o.status.code(), Some(0));
}

#[test]
fn interactive_and_batch_runs_agree() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(dir.path(), "spec.txt", SPEC);
    let batch = cewb(&["--batch", &spec, "--emit", "clauses"], "");
    let session = dir.path().join("repl.session").display().to_string();
    let typed: String = SPEC.lines().map(|l| format!("{l}\ny\n")).collect();
    cewb(&["--session", &session], &format!("{typed}:quit\n"));
    let repl = cewb(&["show", "clauses", "--session", &session], "");
    assert_eq!(stdout(&batch), stdout(&repl));
    assert_eq!(stdout(&repl).lines().count(), 9, "{}", stdout(&repl));
}
