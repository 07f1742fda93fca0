package demo;

public class Counter {
    private int count;

    public void increment() {
        count++;
    }

    public int current() {
        return count;
    }
}
