//! Processing a whole specification file the way `cewb --batch` does, then
//! saving and restoring the session.

use cewb::lexicon::{Lexicon, SIMPLEMAT_LEXICON};
use cewb::session::Session;
use cewb::shell::{Emit, Shell};

const SPEC: &str = "\
The customer enters a card and a numeric personal code.
If it is not valid then SM rejects the card.
Does the customer enter a card?
Who enters a card?
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut shell = Shell::new(Session::new(Lexicon::parse(SIMPLEMAT_LEXICON)?));
    let mut out = Vec::new();
    let status = shell.run_batch(SPEC, &mut out)?;
    print!("{}", String::from_utf8(out)?);
    println!("exit status {status}");
    print!("{}", Emit::Clauses.render(&shell.session));

    let file = shell.session.to_file();
    let restored = Session::from_file(&file, Lexicon::parse(SIMPLEMAT_LEXICON)?)?;
    assert_eq!(restored.clauses_text(), shell.session.clauses_text());
    print!("session file:\n{file}");
    Ok(())
}
