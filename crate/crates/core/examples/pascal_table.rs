//! Builds a Pascal's-triangle table, prints a few rows and reports the
//! memory an exact table needs as `n` grows.
//!
//! cargo run --example pascal_table

use ofdm_im::PascalTable;

fn main() -> ofdm_im::Result<()> {
    let table = PascalTable::build(10, 5)?;
    println!("{} x {} table, {} entries", table.rows(), table.cols(), table.entry_count());
    for c in 0..table.rows() {
        let row: Vec<String> = table.row(c).unwrap().iter().map(ToString::to_string).collect();
        println!("c={c:2}: {}", row.join(" "));
    }

    println!("\nn, k = n/2, estimated bytes");
    for n in [256usize, 512, 1024, 2048, 4096, 8192] {
        let bytes = PascalTable::estimated_bytes(n, n / 2);
        println!("{n:5} {:>14} ({:.2} GiB)", bytes, bytes as f64 / (1u64 << 30) as f64);
    }

    // Tables above the budget are refused before any allocation.
    match PascalTable::build_with_budget(4096, 2048, 64 << 20) {
        Ok(_) => println!("built"),
        Err(e) => println!("\n64 MiB budget at n=4096: {e}"),
    }
    Ok(())
}
