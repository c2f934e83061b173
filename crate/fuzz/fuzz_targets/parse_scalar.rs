#![no_main]

use libfuzzer_sys::fuzz_target;
use sheaftree::field::FieldSpec;

fuzz_target!(|data: &[u8]| {
    // First byte selects the field, the rest is the scalar literal.
    // Parsing never panics, and accepted scalars round-trip through
    // their canonical rendering.
    if data.is_empty() {
        return;
    }
    let field = match data[0] % 3 {
        0 => FieldSpec::rationals(),
        1 => FieldSpec::prime_field(5).unwrap(),
        _ => FieldSpec::prime_field(2).unwrap(),
    };
    if let Ok(text) = std::str::from_utf8(&data[1..]) {
        if let Ok(s) = field.parse_scalar(text) {
            let back = field.parse_scalar(&field.render(&s)).expect("canonical form parses");
            assert_eq!(back, s);
        }
    }
});
