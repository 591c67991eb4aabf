use std::io::Write;

fn main() {
    if let Ok(n) = std::env::var("FOLFORGE_THREADS") {
        match n.trim().parse::<usize>() {
            Ok(k) if k > 0 => {
                // only fails if a pool already exists, which cannot happen here
                let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
            }
            _ => {
                println!("{{\n  \"error\": {{\n    \"kind\": \"UsageError\",\n    \"message\": \"FOLFORGE_THREADS must be a positive integer\"\n  }}\n}}");
                std::process::exit(folforge_cli::EXIT_INPUT);
            }
        }
    }
    let out = folforge_cli::run(std::env::args_os());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    let _ = std::io::stdout().flush();
    std::process::exit(out.code);
}
