fn main() { println!("deskplan"); }
