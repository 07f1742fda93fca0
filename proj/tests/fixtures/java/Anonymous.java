import java.util.Comparator;

public class Anonymous {
    private int calls;

    Comparator<String> comparator() {
        int bias = 1;
        return new Comparator<String>() {
            private int seen;

            @Override
            public int compare(String left, String right) {
                seen++;
                calls++;
                return Integer.compare(left.length() + bias, right.length());
            }
        };
    }

    static class Counter {
        int value;

        void increment() {
            value++;
        }
    }

    void run() {
        class Local {
            int twice(int x) {
                return x * 2;
            }
        }
        Local local = new Local();
        calls = local.twice(calls);
        new Counter().increment();
    }
}
