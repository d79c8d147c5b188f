//! Runs the JSON interface over the gallery, as the `torstab` binary would.
//!
//! `cargo run --release --example gallery_report [name] [command]`

use torstab::cli::{examples, render, run, Command, Flags, InputDocument};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "blowup_p2:3,1".into());
    let command: Command = args.next().as_deref().unwrap_or("invariants").parse()?;

    println!("{}", render(&examples("list")?));
    let doc: InputDocument = serde_json::from_value(examples(&name)?)?;
    let flags = Flags {
        nu: Some(vec![1; doc.dim]),
        ..Flags::default()
    };
    println!("{}", render(&run(command, &doc, &flags)?));
    Ok(())
}
