package demo;

public class Stats {
    int count;
}
