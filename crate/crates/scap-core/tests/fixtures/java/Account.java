import java.util.HashMap;
import java.util.List;
import java.util.Map;

public class Account {
    private Map<String, Integer> balances = new HashMap<String, Integer>();
    private List<String> log;

    public void deposit(String holder, int amount) {
        Integer current = balances.get(holder);
        if (current == null) {
            balances.put(holder, amount);
        } else {
            balances.put(holder, current + amount);
        }
    }

    public int settle(String holder) {
        try {
            Integer balance = balances.remove(holder);
            return balance == null ? 0 : balance;
        } catch (RuntimeException failure) {
            return -1;
        }
    }
}
