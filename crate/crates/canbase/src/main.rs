fn main() { println!("canbase"); }
