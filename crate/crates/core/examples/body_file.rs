//! Write a body definition file, read it back and rebuild the body.

use illumination::body::BodyFile;
use illumination::scenarios::NamedBody;

fn main() -> illumination::Result<()> {
    let b4 = NamedBody::parse("B4:4")?;
    let file = BodyFile::from_body(&b4.body);
    let text = file.to_json();
    println!("{text}");

    let back = BodyFile::parse(&text)?.build(None)?;
    assert_eq!(back.generators(), b4.body.generators());
    println!("round trip ok: {} orbit points", back.orbit_point_count());

    match BodyFile::parse(r#"{"dim": 2, "symmetry": "one_symmetric", "generators": [["1", "0.5"]]}"#)?.build(None) {
        Ok(_) => println!("unexpected"),
        Err(e) => println!("decimals are rejected: {e}"),
    }
    Ok(())
}
