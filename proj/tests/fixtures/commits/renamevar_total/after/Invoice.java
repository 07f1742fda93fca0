import java.util.List;

public class Invoice {
    private double total;

    public double compute(List<Double> items) {
        double sum = 0;
        for (double item : items) {
            sum += item;
        }
        if (sum > 100) {
            sum = sum * 0.9;
        }
        return sum;
    }

    public double getTotal() {
        return total;
    }
}
