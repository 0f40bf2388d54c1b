//! Simulating a specification. Missing facts come from a definition file or
//! from whoever answers the requests; here a closure plays the user.

use cewb::executor::{execute, OracleMessage};
use cewb::lexicon::{Lexicon, SIMPLEMAT_LEXICON};
use cewb::session::Session;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut s = Session::new(Lexicon::parse(SIMPLEMAT_LEXICON)?);
    for text in [
        "The customer enters a card and a personal code.",
        "SimpleMat checks the personal code.",
        "If the personal code is valid then SimpleMat accepts the card.",
        "If the personal code is not valid then SimpleMat rejects the card.",
    ] {
        s.add(text)?;
    }

    let defs = s.parse_definitions("john is a customer\nbank_card is a card\n1234 is a personal_code\n")?;
    let mut user = |request: &OracleMessage| {
        println!("{request}");
        match request {
            OracleMessage::InstantiationRequest { .. } => Some("s1 is a simplemat".to_string()),
            OracleMessage::TruthRequest { name, adjective } => Some(format!("{name} is {adjective}")),
            _ => None,
        }
    };
    let trace = execute(s.drs(), s.lexicon(), &defs, &mut user)?;
    print!("{}", trace.text());
    Ok(())
}
