//! Write tables as JSON and the codebook as CSV, then read both back.

use schf::code::{read_codebook_csv, write_codebook_csv, DEFAULT_ENUMERATION_CAP};
use schf::{build_tables, CodeSpec, CodeTables};

fn main() -> schf::Result<()> {
    let tables = build_tables(&CodeSpec::standard(8, 0.7)?)?;
    let json = tables.to_json()?;
    let back = CodeTables::from_json(&json)?;
    println!("tables: {} bytes of JSON, {} points after reload", json.len(), back.len());

    let mut csv = Vec::new();
    write_codebook_csv(&tables, &mut csv, DEFAULT_ENUMERATION_CAP)?;
    let words = read_codebook_csv(csv.as_slice())?;
    let same = words.iter().all(|w| back.encode(w.index).map(|x| x.coords == w.coords).unwrap_or(false));
    println!("codebook: {} rows, identical after reload: {same}", words.len());
    print!("{}", String::from_utf8_lossy(&csv).lines().take(3).collect::<Vec<_>>().join("\n"));
    println!();
    Ok(())
}
