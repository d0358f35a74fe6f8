//! Regenerate a shipped algebra-definition file:
//! `cargo run --example dump_builtin -- iso3_1_3 > algebras/iso3_1_3.json`

fn main() {
    let name = std::env::args().nth(1).unwrap_or_else(|| {
        eprintln!(
            "usage: dump_builtin <{}>",
            trilie::structure::BUILTIN_NAMES.join("|")
        );
        std::process::exit(2);
    });
    match trilie::structure::builtin(&name) {
        Some(spec) => print!("{}", spec.to_json_string()),
        None => {
            eprintln!(
                "unknown builtin `{name}`; available: {}",
                trilie::structure::BUILTIN_NAMES.join(", ")
            );
            std::process::exit(2);
        }
    }
}
