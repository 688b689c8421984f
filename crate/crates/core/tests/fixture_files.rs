use std::path::Path;

use tilesep_core::*;

fn read(rel: &str) -> String {
    std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(rel)).unwrap()
}

#[test]
fn shipped_files_match_builtin_fixtures() {
    for (name, s, a) in fixtures::umfta_fixtures() {
        let text = read(&format!("{name}.tds"));
        assert_eq!(text, format::write_system(&s), "{name}");
        let sys = format::parse_system(&text).unwrap().system;
        assert_eq!(format::parse_assembly(&read(&format!("{name}.asm")), &sys).unwrap(), a, "{name}");
    }
    for f in fixtures::adversarial_fixtures() {
        let text = read(&format!("adversarial/{}.tds", f.name));
        assert_eq!(text, format::write_system(&f.system), "{}", f.name);
        let sys = format::parse_system(&text).unwrap().system;
        let asm = format::parse_assembly(&read(&format!("adversarial/{}.asm", f.name)), &sys).unwrap();
        assert_eq!(asm, f.assembly, "{}", f.name);
    }
}
