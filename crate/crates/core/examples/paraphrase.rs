//! Parsing sentences and showing how they were understood.

use cewb::discourse::Drs;
use cewb::lexicon::{Lexicon, SIMPLEMAT_LEXICON};
use cewb::paraphrase::render;
use cewb::parser::parse;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let lex = Lexicon::parse(SIMPLEMAT_LEXICON)?;
    let mut drs = Drs::new();
    for text in [
        "The customer enters a card and a numeric personal code.",
        "If it is not valid then SM rejects the card.",
        "The customer enters a card with a code.",
        "John and Mary enter a card together.",
    ] {
        let tree = parse(text, &lex)?;
        let (next, report) = drs.extend(&tree, &lex)?;
        let p = render(&tree, &report, &lex);
        println!("{text}\n  {}", p.text);
        for m in &p.markers {
            println!("  {:>16} `{}`", m.kind.as_str(), &p.text[m.span.clone()]);
        }
        drs = next;
    }

    match parse("SM can check the card.", &lex) {
        Ok(_) => unreachable!("modal verbs are not admitted"),
        Err(e) => println!("{}", e.diagnostic()),
    }
    Ok(())
}
