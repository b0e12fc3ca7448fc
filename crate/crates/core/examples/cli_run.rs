//! Drive the command-line interface in-process and read back its outputs.
use std::fs;

fn main() {
    let dir = std::env::temp_dir().join("wavecov-example");
    fs::create_dir_all(&dir).unwrap();
    let out = dir.to_str().unwrap();

    let cfg = dir.join("boost.cfg");
    fs::write(&cfg, "# rest-frame LCSE solution seen at 0.3c\nequation = lcse\nbeta = 0.3\n").unwrap();

    let code = wavecov::cli::run(["wavecov", "--out", out, "verify", "boost", cfg.to_str().unwrap()]);
    println!("verify boost exited with {code}");
    let code = wavecov::cli::run(["wavecov", "--out", out, "derive", "galilean", "3"]);
    println!("derive galilean 3 exited with {code}");

    let csv = fs::read_to_string(dir.join("verify-boost.csv")).unwrap();
    println!("\n{}", csv.lines().take(4).collect::<Vec<_>>().join("\n"));

    let replay = dir.join("verify-boost.json");
    println!("\nreplay exited with {}", wavecov::cli::run(["wavecov".as_ref(), "replay".as_ref(), replay.as_os_str()]));
}
