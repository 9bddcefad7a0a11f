use recurzeros::scan::{classify_point, ScanFamily};
use std::time::Instant;

fn main() {
    for i in 0..21 {
        let a = -1.0 + 2.0 * i as f64 / 20.0;
        for j in 0..21 {
            let b = 4.0 * j as f64 / 20.0;
            let t = Instant::now();
            let c = classify_point(ScanFamily::Thm1, a, b, 30).unwrap();
            let el = t.elapsed();
            if el.as_millis() > 200 {
                println!("SLOW a={a:.2} b={b:.2}: {el:?} verdict {:?} suspect {:?}", c.verdict, c.suspect);
            }
        }
        println!("row a={a:.2} done");
    }
}
