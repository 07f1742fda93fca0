package demo;

public class Report {
    private final Counter counter = new Counter();

    public String render() {
        return "count=" + counter.current();
    }
}
